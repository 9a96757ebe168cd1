#pragma once

#include <stdexcept>
#include <string>

namespace topoproj {

// Malformed or unreadable input data (files, matrices with wrong shape/content).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: singular systems, cut-locus log maps, degenerate QR.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration values or flag combinations.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace topoproj
