#pragma once

#include <vector>

#include "topoproj/point_cloud.hpp"

namespace topoproj {

// Sorted list of distinct vertex labels.
struct Simplex {
    std::vector<int> v;

    Simplex() = default;
    explicit Simplex(std::vector<int> verts);

    int dim() const { return static_cast<int>(v.size()) - 1; }

    bool operator==(const Simplex& o) const { return v == o.v; }
};

// Orders by (dimension, lexicographic vertex list).
bool simplex_less(const Simplex& a, const Simplex& b);

struct FilteredSimplex {
    Simplex s;
    double value = 0.0;
};

// Simplices sorted by (value, dimension, lexicographic vertices); every face
// appears no later than its cofaces.
struct FilteredComplex {
    std::vector<FilteredSimplex> cells;
    int vertex_count = 0;
    int max_dim = 0;
};

// Finite face-closed set of simplices, sorted by (dimension, vertices).
struct SimplicialComplex {
    std::vector<Simplex> simplices;

    bool contains(const Simplex& s) const;
    int max_dim() const;
    std::vector<int> vertices() const;
    // Connected components of the 1-skeleton: map vertex -> smallest vertex
    // label in its component.
    std::vector<std::pair<int, int>> component_roots() const;
};

// Vietoris-Rips filtration on the radius scale: a simplex enters at half its
// largest pairwise distance (a pair is joined at t once the distance is
// <= 2t); vertices enter at 0. max_dim is clamped to m-1.
FilteredComplex rips_filtration(const DistanceMatrix& d, int max_dim);

// Subcomplex of simplices with value <= t.
SimplicialComplex complex_at(const FilteredComplex& f, double t);

SimplicialComplex skeleton(const SimplicialComplex& k, int l);

// Image complex under a vertex map; repeated image vertices collapse.
SimplicialComplex simplicial_image(const SimplicialComplex& k, const std::vector<int>& vmap);

// Sorted distinct filtration values.
std::vector<double> critical_values(const FilteredComplex& f);

}  // namespace topoproj
