#include "hnpoly/ffgs.hpp"

#include <algorithm>

namespace hnpoly {

FfgsInvariants::FfgsInvariants(std::int64_t height, Rat degree) : ht(height), deg(std::move(degree)) {
    if (ht <= 0) throw DomainError("InvalidInvariants", "height must be positive");
    if (deg.sign() < 0 || deg > Rat(ht))
        throw DomainError("InvalidInvariants",
                          "degree " + deg.str() + " must lie in [0, " + std::to_string(ht) + "]");
}

SubobjectCloud::SubobjectCloud(FfgsInvariants amb, std::vector<Point> pts)
    : ambient(amb), points(std::move(pts)) {
    const Point origin{Rat(0), Rat(0)};
    const Point top{Rat(ambient.ht), ambient.deg};
    bool has_origin = false, has_top = false;
    for (const auto& p : points) {
        if (p == origin) has_origin = true;
        if (p == top) has_top = true;
        if (p.x.sign() < 0 || p.x > Rat(ambient.ht) || p.y.sign() < 0 || p.y > ambient.deg ||
            p.y > p.x)
            throw DomainError("InvalidCloud", "point (" + p.x.str() + ", " + p.y.str() +
                                                  ") violates the cloud bounds");
        // Quotient slope bound: deg - y <= ht - x, so the dual cloud stays valid.
        if (ambient.deg - p.y > Rat(ambient.ht) - p.x)
            throw DomainError("InvalidCloud", "point (" + p.x.str() + ", " + p.y.str() +
                                                  ") gives a quotient of slope above 1");
    }
    if (!has_origin || !has_top)
        throw DomainError("InvalidCloud", "cloud must contain (0,0) and the ambient point");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
}

OmegaDivisors::OmegaDivisors(std::int64_t degree, std::int64_t height,
                             std::vector<std::vector<Rat>> exps)
    : d(degree), ht(height), per_tau(std::move(exps)) {
    if (d <= 0 || ht <= 0) throw DomainError("InvalidOmega", "d and ht must be positive");
    if (ht % d != 0)
        throw DomainError("DivisibilityViolated",
                          "height " + std::to_string(ht) + " not divisible by d = " + std::to_string(d));
    if (std::cmp_not_equal(per_tau.size(), d))
        throw DomainError("InvalidOmega", "per_tau must have exactly d entries");
    const std::size_t max_count = static_cast<std::size_t>(ht / d);
    for (auto& exps_tau : per_tau) {
        if (exps_tau.size() > max_count)
            throw DomainError("InvalidOmega",
                              "an embedding lists more than ht/d elementary divisors");
        for (const auto& a : exps_tau)
            if (a.sign() < 0) throw DomainError("InvalidOmega", "exponents must be nonnegative");
        std::sort(exps_tau.begin(), exps_tau.end(), [](const Rat& a, const Rat& b) { return a > b; });
    }
}

TorsionTower::TorsionTower(std::int64_t degree, std::vector<SubobjectCloud> levels)
    : d(degree), clouds(std::move(levels)) {
    if (d <= 0) throw DomainError("IncoherentTower", "d must be positive");
    if (clouds.empty()) throw DomainError("IncoherentTower", "tower must have at least one level");
    const std::int64_t h1 = clouds.front().ambient.ht;
    const Rat deg1 = clouds.front().ambient.deg;
    if (h1 % d != 0)
        throw DomainError("IncoherentTower", "base height not divisible by d");
    for (std::size_t m = 0; m < clouds.size(); ++m) {
        const auto& amb = clouds[m].ambient;
        const auto level = static_cast<std::int64_t>(m + 1);
        if (amb.ht != level * h1 || amb.deg != Rat(level) * deg1)
            throw DomainError("IncoherentTower",
                              "level " + std::to_string(m + 1) +
                                  " ambient invariants do not scale linearly");
    }
}

ConcavePolygon hn_polygon(const SubobjectCloud& cloud) {
    return concave_envelope(cloud.points, Point{Rat(cloud.ambient.ht), cloud.ambient.deg});
}

ConcavePolygon normalized_hn(const SubobjectCloud& cloud, std::int64_t d) {
    if (d <= 0 || cloud.ambient.ht % d != 0)
        throw DomainError("DivisibilityViolated",
                          "cloud height " + std::to_string(cloud.ambient.ht) +
                              " not divisible by d = " + std::to_string(d));
    return normalize(hn_polygon(cloud), d);
}

bool is_semistable(const SubobjectCloud& cloud) {
    return hn_polygon(cloud).segments().size() <= 1;
}

std::pair<Rat, Rat> mu_max_min(const ConcavePolygon& p) {
    if (p.empty()) throw DomainError("EmptyInput", "polygon has no segments");
    return {p.segments().front().slope, p.segments().back().slope};
}

bool hom_vanishes(const ConcavePolygon& g1, const ConcavePolygon& g2) {
    return mu_max_min(g1).second > mu_max_min(g2).first;
}

SubobjectCloud dual_cloud(const SubobjectCloud& cloud) {
    const Rat ht(cloud.ambient.ht);
    const Rat& deg = cloud.ambient.deg;
    std::vector<Point> pts;
    pts.reserve(cloud.points.size());
    for (const auto& p : cloud.points) {
        const Rat x2 = ht - p.x;
        pts.push_back({x2, x2 - (deg - p.y)});
    }
    return SubobjectCloud(FfgsInvariants(cloud.ambient.ht, ht - deg), std::move(pts));
}

ConcavePolygon fitting_hodge(const OmegaDivisors& omega) {
    const std::size_t width = static_cast<std::size_t>(omega.ht / omega.d);
    std::vector<ConcavePolygon> per_tau;
    per_tau.reserve(omega.per_tau.size());
    for (const auto& exps : omega.per_tau) {
        std::vector<std::pair<Rat, Rat>> pairs;
        std::size_t zeros = width - exps.size();
        for (const auto& a : exps) {
            if (a.is_zero())
                ++zeros;
            else
                pairs.emplace_back(a, Rat(1));
        }
        if (zeros > 0) pairs.emplace_back(Rat(0), Rat(static_cast<long long>(zeros)));
        per_tau.push_back(ConcavePolygon::from_slopes(pairs));
    }
    return average(per_tau);
}

ConcavePolygon hodge_from_mu_at_p(const CaseData& cs, const MuData& mu) {
    return mu_average(cs, mu);
}

TowerLimit tower_limit(const TorsionTower& tower) {
    // Normalized and rescaled per-level envelopes Q_m over [0, h1/d].
    std::vector<ConcavePolygon> q;
    q.reserve(tower.clouds.size());
    for (std::size_t m = 0; m < tower.clouds.size(); ++m) {
        auto level_poly = normalized_hn(tower.clouds[m], tower.d);
        std::vector<std::pair<Rat, Rat>> pairs;
        const Rat scale(static_cast<long long>(m + 1));
        for (const auto& s : level_poly.segments()) pairs.emplace_back(s.slope, s.width / scale);
        q.push_back(ConcavePolygon::from_slopes(pairs));
    }

    std::vector<Rat> grid;
    for (const auto& p : q)
        for (const auto& v : p.vertices()) grid.push_back(v.x);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    TowerLimit result;
    result.levels = q.size();

    std::vector<Point> verts;
    verts.reserve(grid.size());
    for (const auto& x : grid) {
        Rat best = q.front().evaluate(x);
        for (std::size_t m = 1; m < q.size(); ++m) best = min(best, q[m].evaluate(x));
        verts.push_back({x, best});
    }
    // The pointwise minimum of concave functions is concave, and a linear
    // interpolation of concave samples stays concave, so this cannot throw
    // for coherent towers.
    result.limit = ConcavePolygon::from_vertices(verts);

    // Monotone-chain audit: Q_{i*m}(x) <= Q_i(x) must hold level-to-level.
    for (std::size_t i = 1; i <= q.size(); ++i) {
        for (std::size_t m = 2; i * m <= q.size(); ++m) {
            const auto& coarse = q[i - 1];
            const auto& fine = q[i * m - 1];
            for (const auto& x : grid)
                if (fine.evaluate(x) > coarse.evaluate(x))
                    result.violations.push_back({i, m, x});
        }
    }
    return result;
}

ChainVerdict chain_check(const ConcavePolygon& hn, const ConcavePolygon& newt,
                         const ConcavePolygon& hdg) {
    if (hn.width() != newt.width() || newt.width() != hdg.width())
        throw DomainError("WidthMismatch", "chain polygons must share their width");
    ChainVerdict verdict;
    Rat witness;
    verdict.hn_le_newt = pointwise_leq(hn, newt, &witness);
    if (!verdict.hn_le_newt) {
        verdict.witness = witness;
        verdict.newt_le_hdg = pointwise_leq(newt, hdg);
        return verdict;
    }
    verdict.newt_le_hdg = pointwise_leq(newt, hdg, &witness);
    if (!verdict.newt_le_hdg) verdict.witness = witness;
    return verdict;
}

}  // namespace hnpoly
