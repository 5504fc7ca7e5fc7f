#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "hnpoly/polygon.hpp"

namespace hnpoly {

// Slope data of an isocrystal up to isogeny: distinct rational slopes with
// positive multiplicities, kept sorted by decreasing slope. With strict_dm
// set (the default), each slope a/b in lowest terms must have b dividing its
// multiplicity, as slope decompositions over an algebraically closed residue
// field do.
class SlopeMultiset {
public:
    SlopeMultiset() = default;
    explicit SlopeMultiset(std::vector<std::pair<Rat, std::int64_t>> entries,
                           bool strict_dm = true);

    const std::vector<std::pair<Rat, std::int64_t>>& entries() const { return entries_; }
    bool strict_dm() const { return strict_dm_; }
    bool empty() const { return entries_.empty(); }

    std::int64_t height() const;
    std::int64_t multiplicity_of(const Rat& slope) const;

    friend bool operator==(const SlopeMultiset&, const SlopeMultiset&) = default;

private:
    std::vector<std::pair<Rat, std::int64_t>> entries_;  // slopes strictly decreasing
    bool strict_dm_ = true;
};

enum class DualMode {
    PDual,  // lambda -> 1 - lambda (Cartier-dual slopes of p-torsion data)
    Minus,  // lambda -> -lambda (plain linear duality)
};

// Isocrystal slope data with an unramified degree-d action: total height and
// every multiplicity divisible by d.
struct FIsocrystal {
    SlopeMultiset slopes;
    std::int64_t d = 1;

    FIsocrystal() = default;
    FIsocrystal(SlopeMultiset s, std::int64_t degree);

    std::int64_t height() const { return slopes.height(); }
    std::int64_t reduced_height() const { return height() / d; }

    friend bool operator==(const FIsocrystal&, const FIsocrystal&) = default;
};

// Concave polygon with one segment per slope, widths the multiplicities.
ConcavePolygon newton_polygon(const SlopeMultiset& slopes);

// Total rise sum(slope * mult); the Newton endpoint ordinate.
Rat t_N(const SlopeMultiset& slopes);

SlopeMultiset dual_slopes(const SlopeMultiset& slopes, DualMode mode);

// (1/d)-rescaled Newton polygon, over [0, height/d].
ConcavePolygon normalized_newton(const FIsocrystal& iso);

// True iff every slope lies in [0, 1].
bool p_divisible_check(const SlopeMultiset& slopes);

// Splits the slope data at a point of the normalized Newton polygon so the
// first piece realizes the polygon up to x. Throws NotOnPolygon if x misses
// the polygon and UnsplittableAt when the division would break multiplicity
// divisibility by d or strict Dieudonne-Manin integrality.
std::pair<FIsocrystal, FIsocrystal> hn_split(const FIsocrystal& iso, const Point& x);

// Split at x and xhat (x.x <= xhat.x); the middle piece is empty when they
// coincide.
std::tuple<FIsocrystal, FIsocrystal, FIsocrystal>
three_way_split(const FIsocrystal& iso, const Point& x, const Point& xhat);

}  // namespace hnpoly
