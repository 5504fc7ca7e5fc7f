#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hnpoly/elpel.hpp"
#include "hnpoly/polygon.hpp"

namespace hnpoly {

// (height, degree) invariants of a finite flat group scheme of p-power
// order; the slope deg/ht lies in [0, 1].
struct FfgsInvariants {
    std::int64_t ht = 1;
    Rat deg;

    FfgsInvariants() = default;
    FfgsInvariants(std::int64_t height, Rat degree);

    Rat slope() const { return deg / Rat(ht); }

    friend bool operator==(const FfgsInvariants&, const FfgsInvariants&) = default;
};

// The recorded (height, degree) points of subgroup schemes of an ambient
// object; always contains (0,0) and the ambient point, and every point obeys
// 0 <= y <= x and y <= deg. Everything downstream is computed from this
// cloud, never from the group schemes themselves.
struct SubobjectCloud {
    FfgsInvariants ambient;
    std::vector<Point> points;

    SubobjectCloud() = default;
    SubobjectCloud(FfgsInvariants amb, std::vector<Point> pts);

    friend bool operator==(const SubobjectCloud&, const SubobjectCloud&) = default;
};

// Elementary-divisor exponents of the module of invariant differentials,
// decomposed along the d embeddings; each embedding carries at most ht/d
// exponents (missing ones count as zero).
struct OmegaDivisors {
    std::int64_t d = 1;
    std::int64_t ht = 1;
    std::vector<std::vector<Rat>> per_tau;

    OmegaDivisors() = default;
    OmegaDivisors(std::int64_t degree, std::int64_t height, std::vector<std::vector<Rat>> exps);

    friend bool operator==(const OmegaDivisors&, const OmegaDivisors&) = default;
};

// Clouds for the p^m-torsion levels m = 1..M of one p-divisible object:
// ambient heights and degrees scale linearly in m.
struct TorsionTower {
    std::int64_t d = 1;
    std::vector<SubobjectCloud> clouds;

    TorsionTower() = default;
    TorsionTower(std::int64_t degree, std::vector<SubobjectCloud> levels);

    friend bool operator==(const TorsionTower&, const TorsionTower&) = default;
};

// Concave envelope of the cloud anchored at the ambient point; its break
// points are recorded subobjects and its slopes lie in [0, 1].
ConcavePolygon hn_polygon(const SubobjectCloud& cloud);

// (1/d)-rescaled envelope; throws DivisibilityViolated unless d | ht.
ConcavePolygon normalized_hn(const SubobjectCloud& cloud, std::int64_t d);

// True iff no recorded subobject exceeds the ambient slope, i.e. the
// envelope is one segment.
bool is_semistable(const SubobjectCloud& cloud);

// First and last slopes of a nonempty polygon.
std::pair<Rat, Rat> mu_max_min(const ConcavePolygon& p);

// Sufficient criterion: min slope of g1 exceeds max slope of g2, so every
// map g1 -> g2 vanishes. False means "no conclusion".
bool hom_vanishes(const ConcavePolygon& g1, const ConcavePolygon& g2);

// Image of the cloud under G' -> (G/G')^D: ambient (ht, ht - deg), each
// point (ht - x, (ht - x) - (deg - y)).
SubobjectCloud dual_cloud(const SubobjectCloud& cloud);

// Hodge polygon from the Fitting ideals of the differentials: per embedding
// the value at integer i is the sum of the i largest exponents; the result
// averages the embeddings.
ConcavePolygon fitting_hodge(const OmegaDivisors& omega);

// The p-torsion Hodge polygon of the group datum equals the averaged
// cocharacter polygon.
ConcavePolygon hodge_from_mu_at_p(const CaseData& cs, const MuData& mu);

struct TowerViolation {
    std::size_t i = 0;  // coarse level
    std::size_t m = 0;  // refinement factor; compares level i*m against i
    Rat x;
};

struct TowerLimit {
    ConcavePolygon limit;
    std::vector<TowerViolation> violations;  // empty for coherent towers
    std::size_t levels = 0;                  // truncation depth M actually used
};

// Pointwise infimum over m of (1/m)-rescalings of the per-level normalized
// envelopes, evaluated on the union of rescaled break abscissae, returned as
// the tightest concave under-approximation. Throws IncoherentTower when the
// ambient invariants do not scale linearly.
TowerLimit tower_limit(const TorsionTower& tower);

struct ChainVerdict {
    bool hn_le_newt = false;
    bool newt_le_hdg = false;
    std::optional<Rat> witness;  // first violating abscissa, if any
};

// Checks the two-step chain hn <= newt <= hdg pointwise on equal-width
// polygons; throws WidthMismatch otherwise.
ChainVerdict chain_check(const ConcavePolygon& hn, const ConcavePolygon& newt,
                         const ConcavePolygon& hdg);

}  // namespace hnpoly
