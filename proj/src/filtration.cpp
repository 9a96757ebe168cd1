#include "topoproj/filtration.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace topoproj {

Simplex::Simplex(std::vector<int> verts) : v(std::move(verts)) {
    if (v.empty()) throw std::invalid_argument("simplex needs at least one vertex");
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        throw std::invalid_argument("simplex vertices must be distinct");
    if (v.front() < 0) throw std::invalid_argument("simplex vertices must be nonnegative");
}

bool simplex_less(const Simplex& a, const Simplex& b) {
    if (a.v.size() != b.v.size()) return a.v.size() < b.v.size();
    return a.v < b.v;
}

bool SimplicialComplex::contains(const Simplex& s) const {
    return std::binary_search(simplices.begin(), simplices.end(), s, simplex_less);
}

int SimplicialComplex::max_dim() const {
    return simplices.empty() ? -1 : simplices.back().dim();
}

std::vector<int> SimplicialComplex::vertices() const {
    std::vector<int> out;
    for (const Simplex& s : simplices) {
        if (s.dim() > 0) break;
        out.push_back(s.v[0]);
    }
    return out;
}

namespace {

int uf_find(std::map<int, int>& parent, int a) {
    while (parent[a] != a) {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    return a;
}

}  // namespace

std::vector<std::pair<int, int>> SimplicialComplex::component_roots() const {
    std::map<int, int> parent;
    for (int v : vertices()) parent[v] = v;
    for (const Simplex& s : simplices) {
        if (s.dim() != 1) continue;
        int a = uf_find(parent, s.v[0]);
        int b = uf_find(parent, s.v[1]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::pair<int, int>> out;
    for (auto& [v, _] : parent) out.emplace_back(v, uf_find(parent, v));
    return out;
}

FilteredComplex rips_filtration(const DistanceMatrix& d, int max_dim) {
    if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
    const int m = d.size();
    max_dim = std::min(max_dim, m - 1);

    FilteredComplex f;
    f.vertex_count = m;
    f.max_dim = max_dim;

    std::size_t count = m;
    std::size_t layer = m;
    for (int dim = 1; dim <= max_dim; ++dim) {
        layer = layer * static_cast<std::size_t>(m - dim) / static_cast<std::size_t>(dim + 1);
        count += layer;
    }
    f.cells.reserve(count);

    for (int i = 0; i < m; ++i) f.cells.push_back({Simplex({i}), 0.0});

    // Enumerate each dimension's simplices in lexicographic vertex order,
    // carrying the running max pairwise distance.
    std::vector<int> verts;
    std::vector<double> maxd;
    auto extend = [&](auto&& self, int dim_left) -> void {
        if (dim_left == 0) {
            Simplex s;
            s.v = verts;
            f.cells.push_back({std::move(s), maxd.back() / 2.0});
            return;
        }
        for (int next = verts.back() + 1; next <= m - dim_left; ++next) {
            double v = maxd.back();
            for (int u : verts) v = std::max(v, d(u, next));
            verts.push_back(next);
            maxd.push_back(v);
            self(self, dim_left - 1);
            verts.pop_back();
            maxd.pop_back();
        }
    };
    for (int dim = 1; dim <= max_dim; ++dim) {
        for (int first = 0; first + dim < m; ++first) {
            verts.assign(1, first);
            maxd.assign(1, 0.0);
            extend(extend, dim);
        }
    }

    std::stable_sort(f.cells.begin(), f.cells.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
        if (a.value != b.value) return a.value < b.value;
        return simplex_less(a.s, b.s);
    });
    return f;
}

SimplicialComplex complex_at(const FilteredComplex& f, double t) {
    SimplicialComplex k;
    for (const FilteredSimplex& c : f.cells)
        if (c.value <= t) k.simplices.push_back(c.s);
    std::sort(k.simplices.begin(), k.simplices.end(), simplex_less);
    return k;
}

SimplicialComplex skeleton(const SimplicialComplex& k, int l) {
    if (l < 0) throw std::invalid_argument("skeleton level must be nonnegative");
    SimplicialComplex out;
    for (const Simplex& s : k.simplices) {
        if (s.dim() > l) break;
        out.simplices.push_back(s);
    }
    return out;
}

SimplicialComplex simplicial_image(const SimplicialComplex& k, const std::vector<int>& vmap) {
    SimplicialComplex out;
    out.simplices.reserve(k.simplices.size());
    for (const Simplex& s : k.simplices) {
        std::vector<int> img;
        img.reserve(s.v.size());
        for (int v : s.v) {
            if (v < 0 || v >= static_cast<int>(vmap.size()) || vmap[v] < 0)
                throw std::invalid_argument("vertex map does not cover vertex " + std::to_string(v));
            img.push_back(vmap[v]);
        }
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        out.simplices.emplace_back(Simplex(std::move(img)));
    }
    std::sort(out.simplices.begin(), out.simplices.end(), simplex_less);
    out.simplices.erase(std::unique(out.simplices.begin(), out.simplices.end()), out.simplices.end());
    return out;
}

std::vector<double> critical_values(const FilteredComplex& f) {
    std::vector<double> vals;
    vals.reserve(f.cells.size());
    for (const FilteredSimplex& c : f.cells) vals.push_back(c.value);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

}  // namespace topoproj
