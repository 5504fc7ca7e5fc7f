#include "hnpoly/elpel.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace hnpoly {

std::string case_name(Case c) {
    switch (c) {
        case Case::EL: return "EL";
        case Case::PEL_C: return "PEL_C";
        case Case::PEL_U: return "PEL_U";
    }
    return "EL";
}

Case case_from_name(const std::string& name) {
    if (name == "EL") return Case::EL;
    if (name == "PEL_C") return Case::PEL_C;
    if (name == "PEL_U") return Case::PEL_U;
    throw DomainError("UnknownCase", "case must be EL, PEL_C or PEL_U, got '" + name + "'");
}

MuValidation validate_mu(const CaseData& cs, const MuData& mu) {
    MuValidation v;
    auto fail = [&v](std::string reason) {
        v.ok = false;
        v.reasons.push_back(std::move(reason));
    };

    if (cs.d < 1) fail("d must be a positive integer");
    if (cs.n < 1) fail("n must be a positive integer");
    if (cs.kind == Case::PEL_C && cs.n % 2 != 0)
        fail("PEL_C requires n even (symplectic pairing)");
    if (cs.kind == Case::PEL_U && cs.d % 2 != 0)
        fail("PEL_U requires d even (nontrivial unramified involution)");
    if (std::cmp_not_equal(mu.pairs.size(), cs.d)) {
        fail("mu must list exactly d = " + std::to_string(cs.d) + " pairs, got " +
             std::to_string(mu.pairs.size()));
        return v;  // index-based checks below would be meaningless
    }

    for (std::size_t t = 0; t < mu.pairs.size(); ++t) {
        const auto [p, q] = mu.pairs[t];
        if (p < 0 || q < 0) fail("mu entries must be nonnegative at tau = " + std::to_string(t));
        if (p + q != cs.n)
            fail("p_tau + q_tau must equal n at tau = " + std::to_string(t));
    }
    if (cs.kind == Case::PEL_C) {
        for (std::size_t t = 0; t < mu.pairs.size(); ++t)
            if (mu.pairs[t].first != cs.n / 2 || mu.pairs[t].second != cs.n / 2)
                fail("PEL_C requires p_tau = q_tau = n/2 at tau = " + std::to_string(t));
    }
    if (cs.kind == Case::PEL_U && cs.d % 2 == 0) {
        const std::size_t half = static_cast<std::size_t>(cs.d / 2);
        for (std::size_t t = 0; t < mu.pairs.size(); ++t) {
            const std::size_t ts = (t + half) % mu.pairs.size();
            if (mu.pairs[ts].first != mu.pairs[t].second)
                fail("PEL_U requires p_{tau*} = q_tau at tau = " + std::to_string(t));
        }
    }
    return v;
}

void require_valid_mu(const CaseData& cs, const MuData& mu) {
    const auto v = validate_mu(cs, mu);
    if (v.ok) return;
    std::string detail;
    for (const auto& r : v.reasons) {
        if (!detail.empty()) detail += "; ";
        detail += r;
    }
    throw DomainError("InvalidMu", detail);
}

ConcavePolygon mu_average(const CaseData& cs, const MuData& mu) {
    require_valid_mu(cs, mu);
    std::vector<ConcavePolygon> per_tau;
    per_tau.reserve(mu.pairs.size());
    for (const auto& [p, q] : mu.pairs) {
        std::vector<std::pair<Rat, Rat>> pairs;
        if (p > 0) pairs.emplace_back(Rat(1), Rat(p));
        if (q > 0) pairs.emplace_back(Rat(0), Rat(q));
        per_tau.push_back(ConcavePolygon::from_slopes(pairs));
    }
    return average(per_tau);
}

namespace {

// The n-vector of unit-interval slopes, i.e. the dominant cocharacter
// coordinates realizing the polygon; used as the deterministic tiebreak.
std::vector<Rat> slope_vector(const ConcavePolygon& p) {
    std::vector<Rat> v;
    for (const auto& s : p.segments()) {
        long long w = s.width.num().get_si();  // widths are integral here
        for (long long i = 0; i < w; ++i) v.push_back(s.slope);
    }
    return v;
}

bool lex_greater(const ConcavePolygon& a, const ConcavePolygon& b) {
    return slope_vector(a) > slope_vector(b);
}

FIsocrystal raw_isocrystal(const ConcavePolygon& normalized, std::int64_t d) {
    std::vector<std::pair<Rat, std::int64_t>> entries;
    for (const auto& s : normalized.segments())
        entries.emplace_back(s.slope, d * s.width.num().get_si());
    return FIsocrystal(SlopeMultiset(std::move(entries)), d);
}

// Depth-first search over vertex chains (0,0) = v_0 < v_1 < ... < (n, e)
// with integral abscissae, ordinates on the (1/d)-grid, and slopes strictly
// decreasing within [0, 1]. Interior vertices are exactly the break points,
// so the grid constraint is the break-point integrality criterion.
struct Enumerator {
    const CaseData& cs;
    const ConcavePolygon& mubar;
    Rat end;
    std::int64_t max_den;
    std::vector<Point> chain{{Rat(0), Rat(0)}};
    std::vector<ConcavePolygon> found;

    void extend(const Point& last, const std::optional<Rat>& prev_slope) {
        for (std::int64_t x2 = last.x.num().get_si() + 1; x2 <= cs.n; ++x2) {
            const Rat dx = Rat(x2) - last.x;
            mpz_class k_lo = (last.y * Rat(cs.d)).num();  // slope >= 0
            const Rat cap = min(last.y + dx, mubar.evaluate(Rat(x2)));
            mpz_class k_hi = (cap * Rat(cs.d)).floor();
            if (prev_slope) {
                // strictly below the previous slope
                const Rat strict = (last.y + dx * *prev_slope) * Rat(cs.d);
                const mpz_class bound = strict.is_integer() ? mpz_class(strict.num() - 1)
                                                            : strict.floor();
                if (bound < k_hi) k_hi = bound;
            }
            for (mpz_class k = k_lo; k <= k_hi; ++k) {
                const Rat y2(k, mpz_class(cs.d));
                const Rat slope = (y2 - last.y) / dx;
                if (max_den > 0 && slope.den() > max_den) continue;
                const Point v{Rat(x2), y2};
                if (x2 == cs.n) {
                    if (y2 == end) {
                        chain.push_back(v);
                        finalize();
                        chain.pop_back();
                    }
                    continue;
                }
                chain.push_back(v);
                extend(v, slope);
                chain.pop_back();
            }
        }
    }

    void finalize() {
        auto poly = ConcavePolygon::from_vertices(chain);
        if (cs.kind != Case::EL && !is_symmetric(poly)) return;
        if (!leq(poly, mubar)) return;
        found.push_back(std::move(poly));
    }
};

}  // namespace

std::vector<NewtonPoint> enumerate_B(const CaseData& cs, const MuData& mu,
                                     std::int64_t max_denominator) {
    require_valid_mu(cs, mu);
    const auto mubar = mu_average(cs, mu);

    Enumerator en{cs, mubar, mubar.end_height(), max_denominator, {{Rat(0), Rat(0)}}, {}};
    en.extend({Rat(0), Rat(0)}, std::nullopt);

    // Dominance-descending topological order, lexicographically greatest
    // available polygon first; the mu-ordinary element (= mubar) dominates
    // everything it is comparable to and is lex-maximal, so it leads.
    auto& cands = en.found;
    std::vector<bool> emitted(cands.size(), false);
    std::vector<NewtonPoint> out;
    out.reserve(cands.size());
    while (out.size() < cands.size()) {
        std::ptrdiff_t pick = -1;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (emitted[i]) continue;
            bool free = true;
            for (std::size_t j = 0; j < cands.size(); ++j) {
                if (j == i || emitted[j]) continue;
                if (cands[i] != cands[j] && leq(cands[i], cands[j])) {
                    free = false;  // an un-emitted dominator remains
                    break;
                }
            }
            if (free && (pick < 0 || lex_greater(cands[i], cands[static_cast<std::size_t>(pick)])))
                pick = static_cast<std::ptrdiff_t>(i);
        }
        emitted[static_cast<std::size_t>(pick)] = true;
        const auto& poly = cands[static_cast<std::size_t>(pick)];
        out.push_back({poly, raw_isocrystal(poly, cs.d)});
    }
    return out;
}

bool is_basic(const NewtonPoint& b, const std::vector<NewtonPoint>& B) {
    if (std::find(B.begin(), B.end(), b) == B.end())
        throw DomainError("NotMember", "Newton point does not belong to the given set");
    for (const auto& other : B)
        if (other.poly != b.poly && leq(other.poly, b.poly)) return false;
    return true;
}

Rat rz_dimension(const CaseData& cs, const MuData& mu) {
    require_valid_mu(cs, mu);
    switch (cs.kind) {
        case Case::EL:
        case Case::PEL_U: {
            Rat sum;
            for (const auto& [p, q] : mu.pairs) sum += Rat(p) * Rat(q);
            return cs.kind == Case::EL ? sum : sum / Rat(2);
        }
        case Case::PEL_C: {
            const Rat half(cs.n, 2);
            return Rat(cs.d) * half * (half + Rat(1)) / Rat(2);
        }
    }
    return Rat(0);
}

StrataReport strata_report(const CaseData& cs, const MuData& mu, std::int64_t max_denominator) {
    const auto B = enumerate_B(cs, mu, max_denominator);
    const auto mubar = mu_average(cs, mu);
    const auto dim = rz_dimension(cs, mu);

    StrataReport report;
    report.reserve(B.size());
    for (const auto& nu : B) {
        StrataEntry entry;
        entry.newton = nu;
        entry.basic = is_basic(nu, B);
        entry.contact_break_points = contact_break_points(nu.poly, mubar);
        entry.hn_condition = !entry.contact_break_points.empty();
        entry.dim = dim;
        report.push_back(std::move(entry));
    }
    return report;
}

}  // namespace hnpoly
