#include "topoproj/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "topoproj/error.hpp"

namespace topoproj {

namespace {

// Sum of lengths of maximal runs of flagged intervals; exact telescoping
// inside each run keeps full-axis measures bit-exact.
double flagged_measure(const std::vector<double>& grid, const std::vector<char>& flags) {
    double total = 0.0;
    std::size_t i = 0;
    while (i < flags.size()) {
        if (!flags[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < flags.size() && flags[j]) ++j;
        total += grid[j] - grid[i];
        i = j;
    }
    return total;
}

// Breakpoints on [0, a_n): X-side values shifted by -eta, Y-side values as
// they are, clipped, with 0 and a_n as end posts.
std::vector<double> build_grid(const std::vector<double>& x_vals, const std::vector<double>& y_vals,
                               double eta, double a_n) {
    std::vector<double> g{0.0};
    for (double v : x_vals) {
        const double s = v - eta;
        if (s > 0.0 && s < a_n) g.push_back(s);
    }
    for (double v : y_vals) {
        if (v > 0.0 && v < a_n) g.push_back(v);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    g.push_back(a_n);
    return g;
}

std::vector<double> diagram_values(const std::vector<PersistenceDiagram>& ds) {
    std::vector<double> out;
    for (const PersistenceDiagram& d : ds) {
        for (const PersistencePair& pr : d.pairs) {
            out.push_back(pr.birth);
            if (!pr.infinite()) out.push_back(pr.death);
        }
    }
    return out;
}

// Classes alive at t after shifting the diagram left by `shift`; comparisons
// happen in the shifted domain so breakpoints and counts use the same doubles.
int live_count_shifted(const PersistenceDiagram& d, double shift, double t) {
    int n = 0;
    for (const PersistencePair& pr : d.pairs) {
        if (pr.birth - shift > t) continue;
        if (pr.infinite() || t < pr.death - shift) ++n;
    }
    return n;
}

SimplicialComplex complex_at_shifted(const FilteredComplex& f, double shift, double t) {
    SimplicialComplex k;
    for (const FilteredSimplex& c : f.cells)
        if (c.value - shift <= t) k.simplices.push_back(c.s);
    std::sort(k.simplices.begin(), k.simplices.end(), simplex_less);
    return k;
}

void free_reduce(std::vector<int>& w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (int c : w) {
        if (!out.empty() && out.back() == -c)
            out.pop_back();
        else
            out.push_back(c);
    }
    w.swap(out);
}

void cyclic_reduce(std::vector<int>& w) {
    free_reduce(w);
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
    }
}

std::vector<int> invert_word(const std::vector<int>& w) {
    std::vector<int> out(w.rbegin(), w.rend());
    for (int& c : out) c = -c;
    return out;
}

void push_reduced(std::vector<int>& w, int letter) {
    if (letter == 0) return;
    if (!w.empty() && w.back() == -letter)
        w.pop_back();
    else
        w.push_back(letter);
}

// Spanning-tree data for the component of a basepoint: Kruskal tree over
// lexicographically ordered edges, parent pointers toward the basepoint, one
// generator per non-tree edge.
struct EdgePath {
    int root = 0;
    std::set<int> comp_vertices;
    std::set<std::pair<int, int>> tree;            // edges (u < v)
    std::map<std::pair<int, int>, int> generator;  // non-tree edges (u < v) -> index
    std::map<int, int> parent;
    GroupPresentation pres;

    // Oriented edge u -> v as a presentation letter; 0 means identity.
    int letter(int u, int v) const {
        if (u == v) return 0;
        const std::pair<int, int> e{std::min(u, v), std::max(u, v)};
        if (tree.count(e)) return 0;
        const auto it = generator.find(e);
        if (it == generator.end())
            throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                        ") is not part of the complex");
        return u < v ? it->second + 1 : -(it->second + 1);
    }

    // Letters of the tree path basepoint -> v appended to w.
    void path_from_root(int v, std::vector<int>& w, const EdgePath& target,
                        const std::vector<int>* vmap) const {
        std::vector<int> chain;
        for (int a = v; a != root; a = parent.at(a)) chain.push_back(a);
        chain.push_back(root);
        std::reverse(chain.begin(), chain.end());
        for (std::size_t s = 0; s + 1 < chain.size(); ++s) {
            const int a = vmap ? (*vmap)[chain[s]] : chain[s];
            const int b = vmap ? (*vmap)[chain[s + 1]] : chain[s + 1];
            push_reduced(w, target.letter(a, b));
        }
    }
};

EdgePath build_edge_path(const SimplicialComplex& k, int basepoint) {
    if (!k.contains(Simplex({basepoint})))
        throw std::invalid_argument("basepoint " + std::to_string(basepoint) + " is not a vertex");

    std::map<int, int> uf;
    for (int v : k.vertices()) uf[v] = v;
    auto find = [&uf](int a) {
        while (uf[a] != a) {
            uf[a] = uf[uf[a]];
            a = uf[a];
        }
        return a;
    };

    EdgePath ep;
    ep.root = basepoint;
    std::vector<std::pair<int, int>> tree_edges;
    for (const Simplex& s : k.simplices) {
        if (s.dim() != 1) continue;
        const int a = find(s.v[0]), b = find(s.v[1]);
        if (a != b) {
            uf[std::max(a, b)] = std::min(a, b);
            tree_edges.emplace_back(s.v[0], s.v[1]);
        }
    }
    const int root_rep = find(basepoint);
    for (const auto& [v, _] : uf)
        if (find(v) == root_rep) ep.comp_vertices.insert(v);

    std::map<int, std::vector<int>> adj;
    for (const auto& [u, v] : tree_edges) {
        if (!ep.comp_vertices.count(u)) continue;
        ep.tree.insert({u, v});
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    ep.parent[basepoint] = basepoint;
    std::vector<int> queue{basepoint};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int at = queue[head];
        for (int nb : adj[at]) {
            if (ep.parent.count(nb)) continue;
            ep.parent[nb] = at;
            queue.push_back(nb);
        }
    }

    for (const Simplex& s : k.simplices) {
        if (s.dim() != 1) continue;
        if (!ep.comp_vertices.count(s.v[0])) continue;
        const std::pair<int, int> e{s.v[0], s.v[1]};
        if (!ep.tree.count(e)) {
            const int idx = static_cast<int>(ep.generator.size());
            ep.generator.emplace(e, idx);
        }
    }
    ep.pres.generators = static_cast<int>(ep.generator.size());

    for (const Simplex& s : k.simplices) {
        if (s.dim() != 2) continue;
        if (!ep.comp_vertices.count(s.v[0])) continue;
        std::vector<int> w;
        push_reduced(w, ep.letter(s.v[0], s.v[1]));
        push_reduced(w, ep.letter(s.v[1], s.v[2]));
        push_reduced(w, ep.letter(s.v[2], s.v[0]));
        free_reduce(w);
        if (!w.empty()) ep.pres.relators.push_back(std::move(w));
    }
    return ep;
}

// Diagonalizes the exponent-sum matrix with unimodular row/column moves.
// Returns true (decided) unless entries blow past the overflow guard;
// *trivial reports whether Z^gens / image is the zero module.
bool abelianization_trivial(const GroupPresentation& g, bool* trivial) {
    const int n = g.generators;
    const int r = static_cast<int>(g.relators.size());
    *trivial = (n == 0);
    if (n == 0) return true;
    if (r == 0) {
        *trivial = false;  // free group of positive rank
        return true;
    }
    std::vector<std::vector<long long>> a(n, std::vector<long long>(r, 0));
    for (int j = 0; j < r; ++j)
        for (int c : g.relators[j]) a[std::abs(c) - 1][j] += c > 0 ? 1 : -1;

    constexpr long long kGuard = 1LL << 52;
    int rank = 0;
    bool units = true;
    for (int t = 0; t < std::min(n, r); ++t) {
        while (true) {
            int bi = -1, bj = -1;
            for (int i = t; i < n; ++i)
                for (int j = t; j < r; ++j)
                    if (a[i][j] != 0 && (bi < 0 || std::abs(a[i][j]) < std::abs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) break;
            std::swap(a[bi], a[t]);
            for (int i = 0; i < n; ++i) std::swap(a[i][bj], a[i][t]);
            bool clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (a[i][t] == 0) continue;
                const long long qd = a[i][t] / a[t][t];
                for (int j = t; j < r; ++j) {
                    a[i][j] -= qd * a[t][j];
                    if (std::abs(a[i][j]) > kGuard) return false;
                }
                if (a[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < r; ++j) {
                if (a[t][j] == 0) continue;
                const long long qd = a[t][j] / a[t][t];
                for (int i = t; i < n; ++i) {
                    a[i][j] -= qd * a[i][t];
                    if (std::abs(a[i][j]) > kGuard) return false;
                }
                if (a[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[t][t] == 0) break;
        ++rank;
        if (std::abs(a[t][t]) != 1) units = false;
    }
    *trivial = (rank == n) && units;
    return true;
}

void normalize(GroupPresentation& g) {
    for (auto& w : g.relators) cyclic_reduce(w);
    g.relators.erase(std::remove_if(g.relators.begin(), g.relators.end(),
                                    [](const std::vector<int>& w) { return w.empty(); }),
                     g.relators.end());
    std::sort(g.relators.begin(), g.relators.end(),
              [](const std::vector<int>& x, const std::vector<int>& y) {
                  if (x.size() != y.size()) return x.size() < y.size();
                  return x < y;
              });
    g.relators.erase(std::unique(g.relators.begin(), g.relators.end()), g.relators.end());
}

void substitute_letter(std::vector<int>& w, int gen, const std::vector<int>& rep,
                       const std::vector<int>& rep_inv) {
    std::vector<int> out;
    out.reserve(w.size() + rep.size());
    for (int c : w) {
        if (c == gen)
            for (int x : rep) push_reduced(out, x);
        else if (c == -gen)
            for (int x : rep_inv) push_reduced(out, x);
        else
            push_reduced(out, c);
    }
    w.swap(out);
}

// Removes generator `gen` (1-based) from the presentation after substitution,
// renumbering higher letters down.
void drop_generator(GroupPresentation& g, int gen) {
    for (auto& w : g.relators)
        for (int& c : w) {
            if (std::abs(c) > gen) c = c > 0 ? c - 1 : c + 1;
        }
    --g.generators;
}

bool subword_delete(std::vector<int>& longer, const std::vector<int>& pattern) {
    if (pattern.empty() || pattern.size() > longer.size()) return false;
    std::vector<std::vector<int>> forms;
    std::vector<int> rot = pattern;
    for (std::size_t s = 0; s < pattern.size(); ++s) {
        forms.push_back(rot);
        forms.push_back(invert_word(rot));
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
    for (const auto& f : forms) {
        for (std::size_t at = 0; at + f.size() <= longer.size(); ++at) {
            if (std::equal(f.begin(), f.end(), longer.begin() + at)) {
                longer.erase(longer.begin() + at, longer.begin() + at + f.size());
                return true;
            }
        }
    }
    return false;
}

}  // namespace

Barcode to_barcode(const PersistenceDiagram& d) {
    Barcode b;
    b.degree = d.degree;
    b.intervals = d.pairs;
    return b;
}

MuReport mu_quasi_iso(const std::vector<PersistenceDiagram>& dx,
                      const std::vector<PersistenceDiagram>& dy, double eta, double diam_x) {
    if (dx.size() != dy.size()) throw std::invalid_argument("diagram lists must cover the same degrees");
    if (dx.empty()) throw std::invalid_argument("at least degree 0 is required");
    if (!(eta >= 0.0)) throw std::invalid_argument("eta must be nonnegative");
    if (!(diam_x > 0.0)) throw std::invalid_argument("diameter must be positive");

    const double a_n = diam_x / 2.0;
    MuReport rep;
    rep.grid = build_grid(diagram_values(dx), diagram_values(dy), eta, a_n);
    std::vector<char> flags(rep.grid.size() - 1, 1);
    for (std::size_t i = 0; i + 1 < rep.grid.size(); ++i) {
        const double t = rep.grid[i];
        for (std::size_t k = 0; k < dx.size(); ++k) {
            if (live_count_shifted(dx[k], eta, t) != live_count_shifted(dy[k], 0.0, t)) {
                flags[i] = 0;
                break;
            }
        }
    }
    rep.mu = flagged_measure(rep.grid, flags) / a_n;
    rep.counted.assign(flags.begin(), flags.end());
    return rep;
}

double mu_quasi_iso_barcode(const std::vector<Barcode>& bx, const std::vector<Barcode>& by,
                            double eta, double diam_x) {
    if (bx.size() != by.size()) throw std::invalid_argument("barcode lists must cover the same degrees");
    if (bx.empty()) throw std::invalid_argument("at least degree 0 is required");
    if (!(eta >= 0.0)) throw std::invalid_argument("eta must be nonnegative");
    if (!(diam_x > 0.0)) throw std::invalid_argument("diameter must be positive");

    const double a_n = diam_x / 2.0;
    std::vector<double> xv, yv;
    for (const Barcode& b : bx)
        for (const PersistencePair& pr : b.intervals) {
            xv.push_back(pr.birth);
            if (!pr.infinite()) xv.push_back(pr.death);
        }
    for (const Barcode& b : by)
        for (const PersistencePair& pr : b.intervals) {
            yv.push_back(pr.birth);
            if (!pr.infinite()) yv.push_back(pr.death);
        }
    const std::vector<double> grid = build_grid(xv, yv, eta, a_n);

    // Height functions as endpoint event sweeps, X shifted left by eta.
    std::vector<char> flags(grid.size() - 1, 1);
    for (std::size_t k = 0; k < bx.size(); ++k) {
        std::vector<std::pair<double, int>> events;
        for (const PersistencePair& pr : bx[k].intervals) {
            events.emplace_back(pr.birth - eta, +1);
            if (!pr.infinite()) events.emplace_back(pr.death - eta, -1);
        }
        std::vector<std::pair<double, int>> yevents;
        for (const PersistencePair& pr : by[k].intervals) {
            yevents.emplace_back(pr.birth, +1);
            if (!pr.infinite()) yevents.emplace_back(pr.death, -1);
        }
        std::sort(events.begin(), events.end());
        std::sort(yevents.begin(), yevents.end());
        std::size_t px = 0, py = 0;
        int hx = 0, hy = 0;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const double t = grid[i];
            while (px < events.size() && events[px].first <= t) hx += events[px++].second;
            while (py < yevents.size() && yevents[py].first <= t) hy += yevents[py++].second;
            if (hx != hy) flags[i] = 0;
        }
    }
    return flagged_measure(grid, flags) / a_n;
}

double auto_eta(const PointCloud& x, const ProjectionMatrix& p) {
    if (x.size() < 2) return 0.0;
    const double half = eta_bounds(x, p).eta_min / 2.0;
    // Back off a hair so boundary simplices never fail well-definedness
    // through rounding alone.
    return half * (1.0 - 1e-12);
}

CanonicalEmbedding canonical_embedding(const PointCloud& x, const ProjectionMatrix& p,
                                       std::optional<double> eta, int level) {
    if (level < 0) throw std::invalid_argument("comparison level must be nonnegative");
    if (eta && !(*eta >= 0.0)) throw std::invalid_argument("eta must be nonnegative");

    CanonicalEmbedding emb;
    emb.level = level;
    emb.x = x;
    emb.eta = eta ? *eta : auto_eta(x, p);

    const PointCloud y_full = project(x, p);
    const int m = x.size();
    std::vector<int> reps;  // row index of each distinct image point
    emb.vertex_map.assign(m, -1);
    for (int i = 0; i < m; ++i) {
        for (std::size_t r = 0; r < reps.size(); ++r) {
            if ((y_full.pts.row(i).array() == y_full.pts.row(reps[r]).array()).all()) {
                emb.vertex_map[i] = static_cast<int>(r);
                break;
            }
        }
        if (emb.vertex_map[i] < 0) {
            emb.vertex_map[i] = static_cast<int>(reps.size());
            reps.push_back(i);
        }
    }
    Eigen::MatrixXd ypts(reps.size(), y_full.dim());
    for (std::size_t r = 0; r < reps.size(); ++r) ypts.row(r) = y_full.pts.row(reps[r]);
    emb.y = PointCloud(std::move(ypts));

    const DistanceMatrix dmx = pairwise_distances(x);
    Eigen::MatrixXd dmy = pairwise_distances(emb.y).mat();
    // Projections never expand a pair; clamp image distances by the tightest
    // preimage pair so equality cases are exact rather than off by rounding.
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const int u = emb.vertex_map[i], v = emb.vertex_map[j];
            if (u == v) continue;
            dmy(u, v) = std::min(dmy(u, v), dmx(i, j));
            dmy(v, u) = dmy(u, v);
        }

    const int build_dim = std::max(level + 1, 2);
    emb.fx = rips_filtration(dmx, build_dim);
    emb.fy = rips_filtration(DistanceMatrix(std::move(dmy)), build_dim);
    emb.a_n = diameter(x) / 2.0;
    if (emb.a_n <= 0.0) {
        emb.grid = {0.0};
        return emb;
    }
    emb.grid = build_grid(critical_values(emb.fx), critical_values(emb.fy), emb.eta, emb.a_n);

    for (std::size_t i = 0; i + 1 < emb.grid.size(); ++i) {
        EmbeddingInterval iv;
        iv.a = emb.grid[i];
        iv.b = emb.grid[i + 1];
        iv.kx = complex_at_shifted(emb.fx, emb.eta, iv.a);
        iv.qy = complex_at(emb.fy, iv.a);
        for (const Simplex& s : iv.kx.simplices) {
            std::vector<int> img;
            for (int v : s.v) img.push_back(emb.vertex_map[v]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (!iv.qy.contains(Simplex(img))) {
                std::ostringstream msg;
                msg << "eta=" << emb.eta << " too large: simplex {";
                for (std::size_t w = 0; w < s.v.size(); ++w) msg << (w ? "," : "") << s.v[w];
                msg << "} present at scale " << iv.a << "+eta has no image in the projected complex";
                throw numeric_error(msg.str());
            }
        }
        emb.intervals.push_back(std::move(iv));
    }
    return emb;
}

GroupPresentation edge_path_presentation(const SimplicialComplex& k, int basepoint) {
    return build_edge_path(k, basepoint).pres;
}

std::vector<ComponentPresentation> pi1_quotient_presentations(const SimplicialComplex& k2,
                                                              const SimplicialComplex& q2,
                                                              const std::vector<int>& vmap) {
    // Verify the vertex map lands in Q and sends K simplices to Q simplices.
    simplicial_image(k2, vmap);
    for (int v : k2.vertices())
        if (!q2.contains(Simplex({vmap[v]})))
            throw std::invalid_argument("vertex map image " + std::to_string(vmap[v]) +
                                        " is not a vertex of the target complex");

    std::map<int, int> qroot, kroot;
    for (const auto& [v, r] : q2.component_roots()) qroot[v] = r;
    for (const auto& [v, r] : k2.component_roots()) kroot[v] = r;

    // Q component root -> K component roots whose image lands there.
    std::map<int, std::vector<int>> incoming;
    std::set<int> kroots;
    for (const auto& [v, r] : kroot) kroots.insert(r);
    for (int r : kroots) incoming[qroot.at(vmap[r])].push_back(r);

    std::set<int> qroots;
    for (const auto& [v, r] : qroot) qroots.insert(r);

    std::vector<ComponentPresentation> out;
    for (int qr : qroots) {
        EdgePath qp = build_edge_path(q2, qr);
        GroupPresentation g = qp.pres;
        const auto it = incoming.find(qr);
        const std::vector<int> sources = it == incoming.end() ? std::vector<int>{} : it->second;
        for (int kr : sources) {
            EdgePath kp = build_edge_path(k2, kr);
            for (const auto& [edge, gen] : kp.generator) {
                (void)gen;
                std::vector<int> w;
                kp.path_from_root(edge.first, w, qp, &vmap);
                push_reduced(w, qp.letter(vmap[edge.first], vmap[edge.second]));
                std::vector<int> back;
                kp.path_from_root(edge.second, back, qp, &vmap);
                for (int c : invert_word(back)) push_reduced(w, c);
                free_reduce(w);
                if (!w.empty()) g.relators.push_back(std::move(w));
            }
            // Collapsing this component's image contributes its loops as
            // relations; the wedge bookkeeping below covers multiplicity.
        }
        if (sources.size() > 1) g.generators += static_cast<int>(sources.size()) - 1;
        out.push_back({qr, std::move(g)});
    }
    return out;
}

Verdict is_trivial(const GroupPresentation& input, int budget) {
    GroupPresentation g = input;
    for (const auto& w : g.relators)
        for (int c : w)
            if (c == 0 || std::abs(c) > g.generators)
                throw std::invalid_argument("relator letter out of range");
    normalize(g);
    if (g.generators == 0) return Verdict::Trivial;

    bool trivial_ab = false;
    if (abelianization_trivial(g, &trivial_ab) && !trivial_ab) return Verdict::Nontrivial;

    int steps = 0;
    while (steps < budget) {
        normalize(g);
        if (g.generators == 0) return Verdict::Trivial;

        // Generator elimination: a relator containing some generator exactly
        // once solves for it; relators are length-sorted so the cheapest
        // substitution goes first.
        bool progressed = false;
        for (std::size_t ri = 0; ri < g.relators.size() && !progressed; ++ri) {
            const std::vector<int>& w = g.relators[ri];
            for (std::size_t pos = 0; pos < w.size(); ++pos) {
                const int gen = std::abs(w[pos]);
                int occurrences = 0;
                for (int c : w)
                    if (std::abs(c) == gen) ++occurrences;
                if (occurrences != 1) continue;

                std::vector<int> before(w.begin(), w.begin() + pos);
                std::vector<int> after(w.begin() + pos + 1, w.end());
                std::vector<int> rep;
                if (w[pos] > 0) {  // x = before^-1 after^-1
                    rep = invert_word(before);
                    for (int c : invert_word(after)) push_reduced(rep, c);
                } else {  // x = after before
                    rep = after;
                    for (int c : before) push_reduced(rep, c);
                }
                const std::vector<int> rep_inv = invert_word(rep);
                std::vector<std::vector<int>> next;
                for (std::size_t rj = 0; rj < g.relators.size(); ++rj) {
                    if (rj == ri) continue;
                    std::vector<int> nw = g.relators[rj];
                    substitute_letter(nw, gen, rep, rep_inv);
                    next.push_back(std::move(nw));
                    ++steps;
                }
                g.relators = std::move(next);
                drop_generator(g, gen);
                ++steps;
                progressed = true;
                break;
            }
        }
        if (progressed) continue;

        // Length reduction: a relator occurring inside a longer one (up to
        // rotation and inversion) can be deleted from it.
        for (std::size_t ri = 0; ri < g.relators.size() && !progressed; ++ri) {
            for (std::size_t rj = 0; rj < g.relators.size(); ++rj) {
                if (ri == rj || g.relators[ri].size() > g.relators[rj].size()) continue;
                if (subword_delete(g.relators[rj], g.relators[ri])) {
                    ++steps;
                    progressed = true;
                    break;
                }
            }
        }
        if (!progressed) break;
    }
    normalize(g);
    return g.generators == 0 ? Verdict::Trivial : Verdict::Unknown;
}

SimilarityReport classify_intervals(const CanonicalEmbedding& emb, int budget) {
    SimilarityReport rep;
    rep.eta = emb.eta;
    rep.level = emb.level;
    rep.a_n = emb.a_n;
    if (emb.grid.size() < 2) {  // degenerate single-point geometry
        rep.mu_quasi_iso = rep.mu_equiv_lower = rep.mu_equiv_upper = 1.0;
        return rep;
    }

    const auto dx = compute_persistence(emb.fx, emb.level);
    const auto dy = compute_persistence(emb.fy, emb.level);

    std::vector<char> not_t0(emb.intervals.size(), 1), provably_t2(emb.intervals.size(), 0),
        t2_or_maybe(emb.intervals.size(), 0);
    for (std::size_t i = 0; i < emb.intervals.size(); ++i) {
        const EmbeddingInterval& iv = emb.intervals[i];
        IntervalClass cls = IntervalClass::T2;
        for (int k = 0; k <= emb.level; ++k) {
            if (live_count_shifted(dx[k], emb.eta, iv.a) != live_count_shifted(dy[k], 0.0, iv.a)) {
                cls = IntervalClass::T0;
                break;
            }
        }
        if (cls != IntervalClass::T0) {
            bool nontrivial = false, unknown = false;
            for (const ComponentPresentation& cp :
                 pi1_quotient_presentations(skeleton(iv.kx, 2), skeleton(iv.qy, 2), emb.vertex_map)) {
                const Verdict v = is_trivial(cp.group, budget);
                if (v == Verdict::Nontrivial) {
                    nontrivial = true;
                    break;
                }
                if (v == Verdict::Unknown) unknown = true;
            }
            cls = nontrivial ? IntervalClass::T1 : (unknown ? IntervalClass::Maybe : IntervalClass::T2);
        }
        not_t0[i] = cls != IntervalClass::T0;
        provably_t2[i] = cls == IntervalClass::T2;
        t2_or_maybe[i] = cls == IntervalClass::T2 || cls == IntervalClass::Maybe;
        rep.intervals.push_back({iv.a, iv.b, cls});
    }
    rep.mu_quasi_iso = flagged_measure(emb.grid, not_t0) / emb.a_n;
    rep.mu_equiv_lower = flagged_measure(emb.grid, provably_t2) / emb.a_n;
    rep.mu_equiv_upper = flagged_measure(emb.grid, t2_or_maybe) / emb.a_n;
    return rep;
}

}  // namespace topoproj
