// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit on any
// failure. Oracles here are independent implementations, not calls back
// into the code paths they check.

#include <chrono>
#include <functional>
#include <iostream>
#include <vector>

#include "hnpoly/ffgs.hpp"
#include "hnpoly/hodge_newton.hpp"
#include "test_support.hpp"

using namespace hnpoly;
using namespace hnpoly::testing;

namespace {

struct Criterion {
    int id;
    std::string description;
    double time_limit_s;  // 0 = no stated limit
    std::function<bool(std::string&)> body;
};

MuData mu(std::vector<std::pair<std::int64_t, std::int64_t>> pairs) {
    return MuData{std::move(pairs)};
}

struct Datum {
    CaseData cs;
    MuData m;
    std::size_t expected_count;
};

const std::vector<Datum> kCountFamilies = {
    {{Case::EL, 1, 2}, mu({{1, 1}}), 2},          // GL_2, weights (1,0)
    {{Case::PEL_U, 2, 3}, mu({{1, 2}, {2, 1}}), 2},  // GU(1,2) inert
    {{Case::PEL_U, 2, 4}, mu({{1, 3}, {3, 1}}), 3},  // GU(1,3) inert
};

// ---------------------------------------------------------------------------
// Independent exhaustive enumerator: every non-increasing slope vector
// (s_1 >= ... >= s_n) drawn from the rationals in [0, 1] with denominator
// at most 2n, filtered by the endpoint, dominance, symmetry, and
// break-integrality conditions. No code shared with enumerate_B.
std::vector<ConcavePolygon> brute_force_B(const CaseData& cs, const MuData& m) {
    const auto mubar = mu_average(cs, m);
    const Rat end = mubar.end_height();

    std::vector<Rat> slope_pool;
    for (std::int64_t b = 1; b <= 2 * cs.n; ++b)
        for (std::int64_t a = 0; a <= b; ++a) slope_pool.push_back(Rat(a, b));
    std::sort(slope_pool.begin(), slope_pool.end());
    slope_pool.erase(std::unique(slope_pool.begin(), slope_pool.end()), slope_pool.end());

    std::vector<ConcavePolygon> found;
    std::vector<Rat> stack;
    const std::function<void(std::size_t)> rec = [&](std::size_t max_index) {
        if (std::cmp_equal(stack.size(), cs.n)) {
            Rat sum;
            for (const auto& s : stack) sum += s;
            if (sum != end) return;
            std::vector<std::pair<Rat, Rat>> pairs;
            for (const auto& s : stack) pairs.emplace_back(s, Rat(1));
            auto poly = ConcavePolygon::from_slopes(pairs);
            if (!leq(poly, mubar)) return;
            if (cs.kind != Case::EL && !is_symmetric(poly)) return;
            for (const auto& b : poly.break_points())
                if (!b.x.is_integer() || !(b.y * Rat(cs.d)).is_integer()) return;
            if (std::find(found.begin(), found.end(), poly) == found.end())
                found.push_back(std::move(poly));
            return;
        }
        for (std::size_t i = 0; i <= max_index; ++i) {
            stack.push_back(slope_pool[i]);
            rec(i);  // keep the sequence non-increasing
            stack.pop_back();
        }
    };
    rec(slope_pool.size() - 1);
    return found;
}

// ---------------------------------------------------------------------------

FilteredInvariant invariant_for(const CaseData& cs, const MuData& m, const NewtonPoint& nu,
                                bool attach_hn) {
    return FilteredInvariant(cs, nu.slopes_raw, m,
                             attach_hn ? std::optional<ConcavePolygon>(nu.poly) : std::nullopt);
}

bool criterion_gsp4(std::string& why) {
    const CaseData cs{Case::PEL_C, 1, 4};
    const auto m = mu({{2, 2}});
    const auto B = enumerate_B(cs, m);
    if (B.size() != 3) {
        why = "expected 3 Newton points, got " + std::to_string(B.size());
        return false;
    }
    const auto report = strata_report(cs, m);
    std::size_t non_basic = 0;
    for (const auto& entry : report) {
        if (entry.basic) continue;
        ++non_basic;
        if (entry.contact_break_points.empty()) {
            why = "a non-basic stratum has no contact break point";
            return false;
        }
    }
    if (non_basic != 2) {
        why = "expected 2 non-basic strata, got " + std::to_string(non_basic);
        return false;
    }
    return true;
}

bool criterion_unitary_family(std::string& why) {
    for (std::int64_t n = 2; n <= 8; ++n) {
        const CaseData cs{Case::PEL_U, 2, n};
        const auto report = strata_report(cs, mu({{1, n - 1}, {n - 1, 1}}));
        for (const auto& entry : report) {
            if (!entry.basic && !entry.hn_condition) {
                why = "non-basic stratum without the contact condition at n = " +
                      std::to_string(n);
                return false;
            }
        }
    }
    return true;
}

bool criterion_counts(std::string& why) {
    for (const auto& [cs, m, expected] : kCountFamilies) {
        const auto B = enumerate_B(cs, m);
        const auto oracle = brute_force_B(cs, m);
        if (B.size() != expected || oracle.size() != expected) {
            why = case_name(cs.kind) + " n=" + std::to_string(cs.n) + ": enumerator found " +
                  std::to_string(B.size()) + ", oracle " + std::to_string(oracle.size()) +
                  ", expected " + std::to_string(expected);
            return false;
        }
        for (const auto& nu : B) {
            if (std::find(oracle.begin(), oracle.end(), nu.poly) == oracle.end()) {
                why = "enumerator produced a polygon the oracle does not confirm";
                return false;
            }
        }
    }
    return true;
}

bool criterion_decomposition(std::string& why) {
    std::vector<std::pair<CaseData, MuData>> data = {
        {{Case::PEL_C, 1, 4}, mu({{2, 2}})},
        {{Case::EL, 1, 2}, mu({{1, 1}})},
        {{Case::PEL_U, 2, 3}, mu({{1, 2}, {2, 1}})},
        {{Case::PEL_U, 2, 4}, mu({{1, 3}, {3, 1}})},
    };
    std::size_t decomposed = 0;
    for (const auto& [cs, m] : data) {
        const auto B = enumerate_B(cs, m);
        for (const auto& nu : B) {
            if (is_basic(nu, B)) continue;
            auto inv = invariant_for(cs, m, nu, /*attach_hn=*/true);
            for (const auto& [x, xhat] : detect_hn(inv)) {
                const auto dec = decompose(inv, x, xhat);
                if (!dec.verdicts.all_ok()) {
                    why = "verify failed for " + case_name(cs.kind) + " n=" + std::to_string(cs.n);
                    return false;
                }
                ++decomposed;

                // Negative controls: each targeted corruption must flip its check.
                auto corrupt = dec;
                std::swap(corrupt.pieces.front(), corrupt.pieces.back());
                if (verify(corrupt, inv).newton_split.ok) {
                    why = "swapping Newton pieces did not flip the newton_split check";
                    return false;
                }

                const auto mu1 = *dec.pieces.front().mu();
                const auto mu3 = *dec.pieces.back().mu();
                if (mu1 != mu3) {
                    corrupt = dec;
                    corrupt.pieces.front() = FilteredInvariant(
                        dec.pieces.front().case_data(), dec.pieces.front().newton(), mu3);
                    corrupt.pieces.back() = FilteredInvariant(
                        dec.pieces.back().case_data(), dec.pieces.back().newton(), mu1);
                    if (verify(corrupt, inv).hodge_split.ok) {
                        why = "swapping Hodge data did not flip the hodge_split check";
                        return false;
                    }
                }

                corrupt = dec;
                corrupt.pieces.front() = FilteredInvariant(dec.pieces.front().case_data(),
                                                           dec.pieces.front().newton(),
                                                           *dec.pieces.front().mu());  // hn dropped
                if (verify(corrupt, inv).hn_contacts.ok) {
                    why = "dropping a piece HN polygon did not flip the hn_contacts check";
                    return false;
                }

                if (cs.kind != Case::EL) {
                    corrupt = dec;
                    corrupt.pieces.back() = FilteredInvariant(dec.pieces.back().case_data(),
                                                              dec.pieces.front().newton(),
                                                              *dec.pieces.back().mu());
                    if (verify(corrupt, inv).pel_duality.ok) {
                        why = "un-dualizing the last Newton piece did not flip pel_duality";
                        return false;
                    }
                }

                corrupt = dec;
                {
                    // Flat zero-slope data of the right height breaks t_N = t_H.
                    const auto& first = dec.pieces.front();
                    if (t_H(first) != Rat(0)) {
                        FIsocrystal flat(
                            SlopeMultiset({{Rat(0), first.newton().height()}}), first.d());
                        corrupt.pieces.front() =
                            FilteredInvariant(first.case_data(), flat, *first.mu());
                        if (verify(corrupt, inv).pieces_admissible.ok) {
                            why = "flattening a Newton piece did not flip pieces_admissible";
                            return false;
                        }
                    }
                }
            }
        }
    }
    if (decomposed == 0) {
        why = "no decompositions were exercised";
        return false;
    }
    return true;
}

SubobjectCloud random_cloud(Rng& rng) {
    const std::int64_t ht = rand_int(rng, 1, 12);
    const Rat deg = rand_rat(rng, Rat(0), Rat(ht), 6);
    std::vector<Point> pts{{Rat(0), Rat(0)}, {Rat(ht), deg}};
    const long long extra = rand_int(rng, 0, 7);
    for (long long i = 0; i < extra; ++i) {
        const Rat x = rand_rat(rng, Rat(0), Rat(ht), 6);
        const Rat lo = max(Rat(0), deg - (Rat(ht) - x));
        const Rat hi = min(x, deg);
        if (lo > hi) continue;
        pts.push_back({x, rand_rat(rng, lo, hi, 6)});
    }
    return SubobjectCloud(FfgsInvariants(ht, deg), std::move(pts));
}

bool criterion_envelope_oracle(std::string& why) {
    Rng rng(20240801);
    for (int iter = 0; iter < 10000; ++iter) {
        const auto c = random_cloud(rng);
        const auto env = hn_polygon(c);
        const Point anchor{Rat(c.ambient.ht), c.ambient.deg};
        for (const auto& v : env.vertices()) {
            if (env.evaluate(v.x) != chord_max_at(c.points, anchor, v.x)) {
                why = "envelope disagrees with the chord oracle at iteration " +
                      std::to_string(iter);
                return false;
            }
        }
    }
    return true;
}

bool criterion_duality(std::string& why) {
    Rng rng(20240802);
    for (int iter = 0; iter < 10000; ++iter) {
        const auto c = random_cloud(rng);
        if (hn_polygon(dual_cloud(c)) != dual(hn_polygon(c), Rat(1))) {
            why = "dual-cloud envelope mismatch at iteration " + std::to_string(iter);
            return false;
        }
    }
    return true;
}

bool criterion_fitting(std::string& why) {
    Rng rng(20240803);
    for (int iter = 0; iter < 1000; ++iter) {
        const std::int64_t d = rand_int(rng, 1, 3);
        const std::int64_t per = rand_int(rng, 1, 5);
        std::vector<std::vector<Rat>> exps(d);
        for (auto& e : exps) {
            const long long k = rand_int(rng, 0, per);
            for (long long j = 0; j < k; ++j) e.push_back(rand_rat(rng, Rat(0), Rat(4), 4));
        }
        const OmegaDivisors omega(d, d * per, exps);
        const auto hodge = fitting_hodge(omega);
        // Direct Fitting-ideal valuation on each elementary-divisor list.
        for (std::int64_t i = 0; i <= per; ++i) {
            Rat expected;
            for (const auto& e : omega.per_tau) {
                std::vector<Rat> sorted = e;
                sorted.resize(static_cast<std::size_t>(per), Rat(0));
                std::sort(sorted.begin(), sorted.end(),
                          [](const Rat& a, const Rat& b) { return a > b; });
                Rat deg, fitt_i;
                for (const auto& a : sorted) deg += a;
                for (std::size_t j = static_cast<std::size_t>(i); j < sorted.size(); ++j)
                    fitt_i += sorted[j];
                expected += deg - fitt_i;
            }
            if (hodge.evaluate(Rat(i)) != expected / Rat(d)) {
                why = "Fitting polygon disagrees at i = " + std::to_string(i) +
                      ", iteration " + std::to_string(iter);
                return false;
            }
        }
    }
    return true;
}

bool criterion_chain_and_tower(std::string& why) {
    Rng rng(20240804);
    // Chain property over admissible synthesized triples.
    std::vector<std::pair<CaseData, MuData>> pool = {
        {{Case::PEL_C, 1, 4}, mu({{2, 2}})},
        {{Case::EL, 1, 3}, mu({{2, 1}})},
        {{Case::PEL_U, 2, 4}, mu({{1, 3}, {3, 1}})},
        {{Case::PEL_U, 2, 5}, mu({{2, 3}, {3, 2}})},
        {{Case::EL, 2, 3}, mu({{1, 2}, {2, 1}})},
    };
    std::vector<std::pair<ConcavePolygon, std::vector<NewtonPoint>>> families;
    for (const auto& [cs, m] : pool) families.emplace_back(mu_average(cs, m), enumerate_B(cs, m));

    for (int iter = 0; iter < 1000; ++iter) {
        const auto& [mubar, B] = families[rand_int(rng, 0, families.size() - 1)];
        const auto& nu = B[rand_int(rng, 0, B.size() - 1)].poly;
        // hn below nu with the same endpoints: envelope of sampled sub-points.
        std::vector<Point> pts{{Rat(0), Rat(0)}, {nu.width(), nu.end_height()}};
        for (int k = 0; k < 5; ++k) {
            const Rat x = rand_rat(rng, Rat(0), nu.width(), 4);
            const Rat on = nu.evaluate(x);
            const Rat lo = max(Rat(0), x - (nu.width() - nu.end_height()));
            if (lo > on) continue;
            pts.push_back({x, rand_rat(rng, lo, on, 4)});
        }
        const auto hn = concave_envelope(pts, {nu.width(), nu.end_height()});
        const auto verdict = chain_check(hn, nu, mubar);
        if (!verdict.hn_le_newt || !verdict.newt_le_hdg) {
            why = "synthesized admissible triple violated the chain at iteration " +
                  std::to_string(iter);
            return false;
        }
    }

    // Tower recovery of a fixed p-divisible polygon.
    for (int iter = 0; iter < 200; ++iter) {
        const std::int64_t d = rand_int(rng, 1, 2);
        std::vector<std::pair<Rat, Rat>> pairs;
        const long long segs = rand_int(rng, 1, 3);
        for (long long i = 0; i < segs; ++i)
            pairs.emplace_back(rand_rat(rng, Rat(0), Rat(1), 3), Rat(d * rand_int(rng, 1, 2)));
        const auto raw = ConcavePolygon::from_slopes(pairs);
        const auto target = normalize(raw, d);

        std::vector<SubobjectCloud> clouds;
        const std::size_t levels = static_cast<std::size_t>(rand_int(rng, 1, 4));
        for (std::size_t m = 1; m <= levels; ++m) {
            std::vector<std::pair<Rat, Rat>> dilated;
            for (const auto& s : raw.segments())
                dilated.emplace_back(s.slope, s.width * Rat(static_cast<long long>(m)));
            const auto level = ConcavePolygon::from_slopes(dilated);
            auto pts = level.vertices();
            for (int k = 0; k < 3; ++k) {
                const Rat x = rand_rat(rng, Rat(0), level.width(), 3);
                const Rat on = level.evaluate(x);
                const Rat lo = max(Rat(0), x - (level.width() - level.end_height()));
                if (lo > on) continue;
                pts.push_back({x, rand_rat(rng, lo, on, 3)});
            }
            clouds.push_back(SubobjectCloud(
                FfgsInvariants(level.width().num().get_si(), level.end_height()), pts));
        }
        const auto lim = tower_limit(TorsionTower(d, clouds));
        for (const auto& b : target.break_points()) {
            if (lim.limit.evaluate(b.x) != b.y) {
                why = "tower limit missed a break point at iteration " + std::to_string(iter);
                return false;
            }
        }
        if (!lim.violations.empty()) {
            why = "coherent tower reported violations at iteration " + std::to_string(iter);
            return false;
        }
    }
    return true;
}

bool criterion_symmetry_and_contacts(std::string& why) {
    for (std::int64_t n = 2; n <= 8; ++n) {
        const CaseData cs{Case::PEL_U, 2, n};
        const auto m = mu({{1, n - 1}, {n - 1, 1}});
        const auto B = enumerate_B(cs, m);
        for (const auto& nu : B) {
            const auto inv = invariant_for(cs, m, nu, /*attach_hn=*/false);
            for (const auto& [x, xhat] : detect_hn(inv)) {
                if (symmetric_point(nu.poly, xhat) != x ||
                    symmetric_point(nu.poly, x) != xhat) {
                    why = "symmetric_point is not an involution at n = " + std::to_string(n);
                    return false;
                }
                if (!hn_passes_contacts(nu.poly, x, xhat)) {
                    why = "normalized Newton misses its own contact pair at n = " +
                          std::to_string(n);
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "GSp4 strata count (3 points, 2 non-basic, contacts present)", 1.0, criterion_gsp4},
        {2, "unitary signature (1,n-1) family satisfies the contact condition for n=2..8", 10.0,
         criterion_unitary_family},
        {3, "counts cross-checked against the exhaustive slope-multiset oracle", 5.0,
         criterion_counts},
        {4, "decomposition identity suite with negative controls", 5.0, criterion_decomposition},
        {5, "envelope equals the chord oracle on 10^4 random clouds", 30.0,
         criterion_envelope_oracle},
        {6, "duality commutation on 10^4 random clouds", 0.0, criterion_duality},
        {7, "Fitting-Hodge polygon equals the direct valuation on 10^3 divisor lists", 0.0,
         criterion_fitting},
        {8, "chain property on 10^3 synthesized triples and tower recovery", 0.0,
         criterion_chain_and_tower},
        {9, "symmetric-point involution and contact passing on the unitary family", 0.0,
         criterion_symmetry_and_contacts},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string why;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criterion.body(why);
        } catch (const std::exception& e) {
            ok = false;
            why = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && criterion.time_limit_s > 0 && elapsed >= criterion.time_limit_s) {
            ok = false;
            why = "exceeded the time limit of " + std::to_string(criterion.time_limit_s) + "s";
        }
        std::printf("%s criterion %d: %s [%.2fs]%s%s\n", ok ? "PASS" : "FAIL", criterion.id,
                    criterion.description.c_str(), elapsed, why.empty() ? "" : " -- ",
                    why.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
