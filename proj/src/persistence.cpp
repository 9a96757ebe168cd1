#include "topoproj/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace topoproj {

namespace {

struct VertsHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (int x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

// Adds sorted GF(2) columns: symmetric difference into out.
void add_column(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out) {
    out.clear();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (a[i] > b[j])
            out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
}

}  // namespace

ReductionPairs reduction_pairs(const FilteredComplex& f, int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("max_degree must be nonnegative");
    if (max_degree > f.max_dim - 1)
        throw std::invalid_argument("max_degree " + std::to_string(max_degree) +
                                    " exceeds filtration max_dim - 1 = " + std::to_string(f.max_dim - 1));

    const int n = static_cast<int>(f.cells.size());
    std::unordered_map<std::vector<int>, int, VertsHash> index;
    index.reserve(static_cast<std::size_t>(n) * 2);
    for (int i = 0; i < n; ++i) index.emplace(f.cells[i].s.v, i);

    // pivot_owner[r] = reduced column with pivot row r; -1 if none.
    std::vector<int> pivot_owner(n, -1);
    std::vector<std::vector<int>> reduced(n);
    std::vector<char> negative(n, 0), cleared(n, 0);

    std::vector<int> col, tmp, facet;
    // Reduce top dimension first so pivots of dimension d clear columns of
    // dimension d-1 (they are guaranteed to reduce to zero).
    for (int d = f.max_dim; d >= 1; --d) {
        for (int j = 0; j < n; ++j) {
            if (f.cells[j].s.dim() != d || cleared[j]) continue;
            const std::vector<int>& verts = f.cells[j].s.v;
            col.clear();
            facet.resize(verts.size() - 1);
            for (std::size_t skip = 0; skip < verts.size(); ++skip) {
                std::size_t w = 0;
                for (std::size_t r = 0; r < verts.size(); ++r)
                    if (r != skip) facet[w++] = verts[r];
                col.push_back(index.at(facet));
            }
            std::sort(col.begin(), col.end());
            while (!col.empty()) {
                const int owner = pivot_owner[col.back()];
                if (owner < 0) break;
                add_column(col, reduced[owner], tmp);
                col.swap(tmp);
            }
            if (!col.empty()) {
                const int piv = col.back();
                pivot_owner[piv] = j;
                reduced[j] = col;
                negative[j] = 1;
                cleared[piv] = 1;
            }
        }
    }

    ReductionPairs out;
    out.by_degree.resize(max_degree + 1);
    for (int i = 0; i < n; ++i) {
        if (negative[i]) continue;  // death simplex, not a class birth
        const int d = f.cells[i].s.dim();
        if (d > max_degree) continue;
        PersistencePair pr;
        pr.birth = f.cells[i].value;
        if (pivot_owner[i] >= 0) pr.death = f.cells[pivot_owner[i]].value;
        out.by_degree[d].push_back(pr);
    }
    for (auto& v : out.by_degree)
        std::sort(v.begin(), v.end(), [](const PersistencePair& a, const PersistencePair& b) {
            if (a.birth != b.birth) return a.birth < b.birth;
            return a.death < b.death;
        });
    return out;
}

std::vector<PersistenceDiagram> compute_persistence(const FilteredComplex& f, int max_degree) {
    ReductionPairs raw = reduction_pairs(f, max_degree);
    std::vector<PersistenceDiagram> out(max_degree + 1);
    for (int d = 0; d <= max_degree; ++d) {
        out[d].degree = d;
        for (const PersistencePair& pr : raw.by_degree[d])
            if (pr.death > pr.birth) out[d].pairs.push_back(pr);
    }
    return out;
}

int betti_at(const PersistenceDiagram& d, double t) {
    int n = 0;
    for (const PersistencePair& pr : d.pairs)
        if (pr.birth <= t && t < pr.death) ++n;
    return n;
}

}  // namespace topoproj
