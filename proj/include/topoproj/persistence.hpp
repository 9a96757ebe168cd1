#pragma once

#include <limits>
#include <vector>

#include "topoproj/filtration.hpp"

namespace topoproj {

struct PersistencePair {
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();

    bool infinite() const { return std::isinf(death); }
    double persistence() const { return death - birth; }
};

// Multiset of (birth, death) pairs of one homology degree, sorted by
// (birth, death); death is +infinity for classes that never die.
struct PersistenceDiagram {
    int degree = 0;
    std::vector<PersistencePair> pairs;
};

// Raw birth/death pairs per degree straight out of the reduction, including
// zero-persistence pairs. One pair per positive simplex, so per degree d:
// |pairs| = #(d-simplices) - #(negative d-simplices).
struct ReductionPairs {
    std::vector<std::vector<PersistencePair>> by_degree;
};

ReductionPairs reduction_pairs(const FilteredComplex& f, int max_degree);

// Z/2 persistent homology of the filtration for degrees 0..max_degree;
// zero-persistence pairs are dropped. Requires f.max_dim >= max_degree + 1 so
// deaths in the top degree are seen.
std::vector<PersistenceDiagram> compute_persistence(const FilteredComplex& f, int max_degree);

// Number of classes alive at t: pairs with birth <= t < death.
int betti_at(const PersistenceDiagram& d, double t);

}  // namespace topoproj
