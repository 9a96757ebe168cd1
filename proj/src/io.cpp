#include "topoproj/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "topoproj/error.hpp"

namespace topoproj {

namespace {

using nlohmann::json;

std::vector<std::vector<double>> read_numeric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path + " for reading");
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = line;
        stripped.erase(0, stripped.find_first_not_of(" \t"));
        if (stripped.empty() || stripped[0] == '#') continue;

        std::vector<double> row;
        std::stringstream cells(line);
        std::string cell;
        int col = 0;
        while (std::getline(cells, cell, ',')) {
            ++col;
            const std::size_t b = cell.find_first_not_of(" \t");
            const std::size_t e = cell.find_last_not_of(" \t");
            const std::string tok = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
            double v = 0.0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
                throw io_error(path + ": row " + std::to_string(lineno) + ", column " +
                               std::to_string(col) + ": expected a number, got '" + tok + "'");
            if (!std::isfinite(v))
                throw io_error(path + ": row " + std::to_string(lineno) + ", column " +
                               std::to_string(col) + ": value is not finite");
            row.push_back(v);
        }
        if (row.empty())
            throw io_error(path + ": row " + std::to_string(lineno) + ": no values");
        if (!rows.empty() && row.size() != rows.front().size())
            throw io_error(path + ": row " + std::to_string(lineno) + " has " +
                           std::to_string(row.size()) + " values, expected " +
                           std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw io_error(path + ": no data rows");
    return rows;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path + " for writing");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    if (!out) throw io_error("failed writing " + path);
}

json diagram_json(const PersistenceDiagram& d) {
    json pairs = json::array();
    for (const PersistencePair& pr : d.pairs) {
        json p = json::array();
        p.push_back(pr.birth);
        if (pr.infinite())
            p.push_back("inf");
        else
            p.push_back(pr.death);
        pairs.push_back(std::move(p));
    }
    return json{{"scale", "radius"}, {"degree", d.degree}, {"pairs", std::move(pairs)}};
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

PointCloud read_points_csv(const std::string& path) {
    return PointCloud(to_matrix(read_numeric_csv(path)));
}

void write_points_csv(const std::string& path, const PointCloud& x) {
    write_matrix_csv(path, x.pts);
}

ProjectionMatrix read_projection_csv(const std::string& path) {
    const Eigen::MatrixXd m = to_matrix(read_numeric_csv(path));
    try {
        return ProjectionMatrix(m);
    } catch (const std::invalid_argument& e) {
        throw io_error(path + ": " + e.what());
    }
}

void write_projection_csv(const std::string& path, const Eigen::MatrixXd& p) {
    write_matrix_csv(path, p);
}

std::string diagram_to_json(const PersistenceDiagram& d) {
    return diagram_json(d).dump(2) + "\n";
}

PersistenceDiagram diagram_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw io_error(std::string("invalid diagram JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("scale") || !j.contains("degree") || !j.contains("pairs"))
        throw io_error("diagram JSON must have scale, degree and pairs fields");
    if (!j["scale"].is_string() || j["scale"].get<std::string>() != "radius")
        throw io_error("diagram scale must be \"radius\"");
    if (!j["degree"].is_number_integer() || j["degree"].get<int>() < 0)
        throw io_error("diagram degree must be a nonnegative integer");
    if (!j["pairs"].is_array()) throw io_error("diagram pairs must be an array");

    PersistenceDiagram d;
    d.degree = j["degree"].get<int>();
    for (const json& p : j["pairs"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number())
            throw io_error("each diagram pair must be [birth, death]");
        PersistencePair pr;
        pr.birth = p[0].get<double>();
        if (p[1].is_string()) {
            if (p[1].get<std::string>() != "inf")
                throw io_error("death must be a number or \"inf\"");
        } else if (p[1].is_number()) {
            pr.death = p[1].get<double>();
            if (pr.death < pr.birth) throw io_error("death before birth in diagram pair");
        } else {
            throw io_error("death must be a number or \"inf\"");
        }
        d.pairs.push_back(pr);
    }
    return d;
}

PersistenceDiagram read_diagram_json(const std::string& path) {
    try {
        return diagram_from_json(read_text_file(path));
    } catch (const io_error& e) {
        throw io_error(path + ": " + e.what());
    }
}

void write_diagram_json(const std::string& path, const PersistenceDiagram& d) {
    write_text_file(path, diagram_to_json(d));
}

std::string similarity_to_json(const SimilarityReport& rep) {
    json intervals = json::array();
    for (const IntervalReport& iv : rep.intervals) {
        const char* cls = iv.cls == IntervalClass::T0   ? "T0"
                          : iv.cls == IntervalClass::T1 ? "T1"
                          : iv.cls == IntervalClass::T2 ? "T2"
                                                        : "maybe";
        intervals.push_back(json{{"a", iv.a}, {"b", iv.b}, {"class", cls}});
    }
    json j{{"eta", rep.eta},
           {"level", rep.level},
           {"a_n", rep.a_n},
           {"mu_quasi_iso", rep.mu_quasi_iso},
           {"mu_equiv", json::array({rep.mu_equiv_lower, rep.mu_equiv_upper})},
           {"intervals", std::move(intervals)}};
    return j.dump(2) + "\n";
}

void write_similarity_json(const std::string& path, const SimilarityReport& rep) {
    write_text_file(path, similarity_to_json(rep));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw io_error("failed writing " + path);
}

}  // namespace topoproj
