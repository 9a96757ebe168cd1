#pragma once

#include <optional>
#include <vector>

#include "topoproj/persistence.hpp"
#include "topoproj/point_cloud.hpp"

namespace topoproj {

// Partition of the scale axis by what the projection preserves at each scale:
// T0 = some Betti count differs; T1 = counts match but the quotient of the
// image complex is not simply connected; T2 = counts match and the quotient
// fundamental group is provably trivial; Maybe = triviality undecided within
// the rewrite budget (T1 or T2).
enum class IntervalClass { T0, T1, T2, Maybe };

enum class Verdict { Trivial, Nontrivial, Unknown };

// Finite group presentation; relators are words over signed 1-based generator
// letters (+g / -g for generator g-1), stored freely reduced.
struct GroupPresentation {
    int generators = 0;
    std::vector<std::vector<int>> relators;
};

struct EmbeddingInterval {
    double a = 0.0;  // [a, b)
    double b = 0.0;
    SimplicialComplex kx;  // domain complex at a + eta
    SimplicialComplex qy;  // image-side complex at a
};

// Interval-wise simplicial maps K_{t+eta} -> Q_t induced by the projection:
// vertex i goes to the representative of its (deduplicated) image point.
struct CanonicalEmbedding {
    double eta = 0.0;
    int level = 0;     // compare homology in degrees 0..level
    double a_n = 0.0;  // right end of the scale axis, diam(X)/2
    std::vector<double> grid;  // breakpoints a_0=0 < ... < a_n
    std::vector<EmbeddingInterval> intervals;
    std::vector<int> vertex_map;  // X vertex -> Y vertex (after dedup)
    FilteredComplex fx, fy;
    PointCloud x, y;  // y holds the distinct image points, first-occurrence order
};

// Default slack for the maps below: half the smallest distance contraction
// over point pairs, backed off by a relative epsilon so that boundary
// simplices cannot fail the well-definedness check through rounding alone.
double auto_eta(const PointCloud& x, const ProjectionMatrix& p);

// Builds the embedding; eta defaults to auto_eta(x, p). Verifies
// well-definedness (every simplex of K_{t+eta} lands in Q_t) constructively
// on every interval and throws numeric_error naming the offending simplex if
// eta is too large.
CanonicalEmbedding canonical_embedding(const PointCloud& x, const ProjectionMatrix& p,
                                       std::optional<double> eta, int level);

struct MuReport {
    double mu = 0.0;
    std::vector<double> grid;   // breakpoints including 0 and a_n
    std::vector<bool> counted;  // per interval: class counts agree in all degrees
};

// Fraction of the scale axis [0, diam_x/2) on which the diagrams of X
// (shifted by eta) and of Y show the same number of living classes in every
// degree. dx/dy list the diagrams for degrees 0..level.
MuReport mu_quasi_iso(const std::vector<PersistenceDiagram>& dx,
                      const std::vector<PersistenceDiagram>& dy, double eta, double diam_x);

// The same quantity computed from barcodes by sweeping interval endpoints and
// comparing step heights; agrees exactly with mu_quasi_iso.
struct Barcode {
    int degree = 0;
    std::vector<PersistencePair> intervals;
};
Barcode to_barcode(const PersistenceDiagram& d);
double mu_quasi_iso_barcode(const std::vector<Barcode>& bx, const std::vector<Barcode>& by,
                            double eta, double diam_x);

// Edge-path presentation of the fundamental group of the basepoint's
// component: spanning tree via Kruskal over lexicographically sorted edges,
// one generator per non-tree edge, one relator per triangle.
GroupPresentation edge_path_presentation(const SimplicialComplex& k, int basepoint);

// Per component of Q: a presentation of the fundamental group of Q with the
// image of K collapsed to a point. Components receiving no image keep their
// own group; exactly one image component adds its generators' images as
// relators; r > 1 image components also wedge in r-1 free generators.
struct ComponentPresentation {
    int q_root = 0;  // smallest vertex of the Q component
    GroupPresentation group;
};
std::vector<ComponentPresentation> pi1_quotient_presentations(const SimplicialComplex& k2,
                                                              const SimplicialComplex& q2,
                                                              const std::vector<int>& vmap);

// Trivial if bounded Tietze simplification empties the presentation;
// Nontrivial if the abelianization (Smith normal form) is nonzero; Unknown
// when the rewrite budget runs out first.
Verdict is_trivial(const GroupPresentation& g, int budget = 10000);

struct IntervalReport {
    double a = 0.0;
    double b = 0.0;
    IntervalClass cls = IntervalClass::T2;
};

struct SimilarityReport {
    double eta = 0.0;
    int level = 0;
    double a_n = 0.0;
    std::vector<IntervalReport> intervals;
    double mu_quasi_iso = 0.0;
    double mu_equiv_lower = 0.0;  // measure of provably-T2 intervals
    double mu_equiv_upper = 0.0;  // measure of T2-or-undecided intervals
};

SimilarityReport classify_intervals(const CanonicalEmbedding& emb, int budget = 10000);

}  // namespace topoproj
