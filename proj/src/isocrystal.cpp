#include "hnpoly/isocrystal.hpp"

#include <algorithm>

namespace hnpoly {

namespace {

void check_dm_integrality(const Rat& slope, std::int64_t mult, const char* error_code) {
    const mpz_class den = slope.den();
    if (!mpz_divisible_p(mpz_class(mult).get_mpz_t(), den.get_mpz_t()))
        throw DomainError(error_code, "slope " + slope.str() + " denominator does not divide its multiplicity " +
                                          std::to_string(mult));
}

}  // namespace

SlopeMultiset::SlopeMultiset(std::vector<std::pair<Rat, std::int64_t>> entries, bool strict_dm)
    : strict_dm_(strict_dm) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (auto& [slope, mult] : entries) {
        if (mult <= 0)
            throw DomainError("NonPositiveMultiplicity",
                              "multiplicity of slope " + slope.str() + " must be >= 1");
        if (!entries_.empty() && entries_.back().first == slope)
            entries_.back().second += mult;
        else
            entries_.emplace_back(slope, mult);
    }
    if (strict_dm_)
        for (const auto& [slope, mult] : entries_) check_dm_integrality(slope, mult, "DmIntegrality");
}

std::int64_t SlopeMultiset::height() const {
    std::int64_t h = 0;
    for (const auto& [slope, mult] : entries_) h += mult;
    return h;
}

std::int64_t SlopeMultiset::multiplicity_of(const Rat& slope) const {
    for (const auto& [s, m] : entries_)
        if (s == slope) return m;
    return 0;
}

FIsocrystal::FIsocrystal(SlopeMultiset s, std::int64_t degree) : slopes(std::move(s)), d(degree) {
    if (d <= 0) throw DomainError("NonPositiveDegree", "F-degree must be >= 1");
    if (height() % d != 0)
        throw DomainError("DivisibilityViolated",
                          "height " + std::to_string(height()) + " not divisible by d = " +
                              std::to_string(d));
    for (const auto& [slope, mult] : slopes.entries())
        if (mult % d != 0)
            throw DomainError("DivisibilityViolated",
                              "multiplicity " + std::to_string(mult) + " of slope " + slope.str() +
                                  " not divisible by d = " + std::to_string(d));
}

ConcavePolygon newton_polygon(const SlopeMultiset& slopes) {
    std::vector<std::pair<Rat, Rat>> pairs;
    for (const auto& [slope, mult] : slopes.entries()) pairs.emplace_back(slope, Rat(mult));
    return ConcavePolygon::from_slopes(pairs);
}

Rat t_N(const SlopeMultiset& slopes) {
    Rat t;
    for (const auto& [slope, mult] : slopes.entries()) t += slope * Rat(mult);
    return t;
}

SlopeMultiset dual_slopes(const SlopeMultiset& slopes, DualMode mode) {
    std::vector<std::pair<Rat, std::int64_t>> entries;
    for (const auto& [slope, mult] : slopes.entries())
        entries.emplace_back(mode == DualMode::PDual ? Rat(1) - slope : -slope, mult);
    return SlopeMultiset(std::move(entries), slopes.strict_dm());
}

ConcavePolygon normalized_newton(const FIsocrystal& iso) {
    return normalize(newton_polygon(iso.slopes), iso.d);
}

bool p_divisible_check(const SlopeMultiset& slopes) {
    for (const auto& [slope, mult] : slopes.entries())
        if (slope.sign() < 0 || slope > Rat(1)) return false;
    return true;
}

std::pair<FIsocrystal, FIsocrystal> hn_split(const FIsocrystal& iso, const Point& x) {
    const auto poly = normalized_newton(iso);
    if (!poly.contains(x) || x.x.sign() <= 0 || x.x >= poly.width())
        throw DomainError("NotOnPolygon", "split point must lie on the interior of the polygon");

    // Work on raw (unnormalized) widths: the cut abscissa is d * x.x.
    const Rat raw_cut = Rat(iso.d) * x.x;
    if (!raw_cut.is_integer())
        throw DomainError("UnsplittableAt",
                          "cut at x = " + x.x.str() + " is not at an O_F-height");
    std::int64_t remaining = raw_cut.num().get_si();

    std::vector<std::pair<Rat, std::int64_t>> left, right;
    for (const auto& [slope, mult] : iso.slopes.entries()) {
        const std::int64_t take = std::min(mult, remaining);
        if (take > 0) left.emplace_back(slope, take);
        if (mult - take > 0) right.emplace_back(slope, mult - take);
        remaining -= take;
    }

    const bool strict = iso.slopes.strict_dm();
    for (const auto* side : {&left, &right}) {
        for (const auto& [slope, mult] : *side) {
            if (mult % iso.d != 0)
                throw DomainError("UnsplittableAt",
                                  "piece multiplicity " + std::to_string(mult) + " of slope " +
                                      slope.str() + " not divisible by d");
            if (strict) check_dm_integrality(slope, mult, "UnsplittableAt");
        }
    }

    return {FIsocrystal(SlopeMultiset(std::move(left), strict), iso.d),
            FIsocrystal(SlopeMultiset(std::move(right), strict), iso.d)};
}

std::tuple<FIsocrystal, FIsocrystal, FIsocrystal>
three_way_split(const FIsocrystal& iso, const Point& x, const Point& xhat) {
    if (x.x > xhat.x)
        throw DomainError("UnsplittableAt", "x must not lie to the right of xhat");
    if (x == xhat) {
        auto [first, last] = hn_split(iso, x);
        return {std::move(first), FIsocrystal(SlopeMultiset({}, iso.slopes.strict_dm()), iso.d),
                std::move(last)};
    }
    auto [first, rest] = hn_split(iso, x);
    auto [middle, last] = hn_split(rest, Point{xhat.x - x.x, xhat.y - x.y});
    return {std::move(first), std::move(middle), std::move(last)};
}

}  // namespace hnpoly
