#include "hnpoly/hodge_newton.hpp"

#include <algorithm>

namespace hnpoly {

namespace {

std::vector<std::vector<std::int64_t>> jumps_from_mu(const CaseData& cs, const MuData& mu) {
    require_valid_mu(cs, mu);
    std::vector<std::vector<std::int64_t>> jumps;
    jumps.reserve(mu.pairs.size());
    for (const auto& [p, q] : mu.pairs) {
        std::vector<std::int64_t> tau(static_cast<std::size_t>(p), 1);
        tau.resize(static_cast<std::size_t>(p + q), 0);
        jumps.push_back(std::move(tau));
    }
    return jumps;
}

}  // namespace

FilteredInvariant::FilteredInvariant(CaseData cs, FIsocrystal newton, const MuData& mu,
                                     std::optional<ConcavePolygon> hn)
    : FilteredInvariant(cs, std::move(newton), jumps_from_mu(cs, mu), std::move(hn)) {}

FilteredInvariant::FilteredInvariant(CaseData cs, FIsocrystal newton,
                                     std::vector<std::vector<std::int64_t>> jumps,
                                     std::optional<ConcavePolygon> hn)
    : case_(cs), newton_(std::move(newton)), jumps_(std::move(jumps)), hn_(std::move(hn)) {
    if (newton_.d != case_.d)
        throw DomainError("DegreeMismatch", "isocrystal degree differs from the case datum");
    if (newton_.height() != case_.d * case_.n)
        throw DomainError("HeightMismatch",
                          "isocrystal height " + std::to_string(newton_.height()) +
                              " must equal d*n = " + std::to_string(case_.d * case_.n));
    if (std::cmp_not_equal(jumps_.size(), case_.d))
        throw DomainError("InvalidJumps", "need one jump multiset per embedding");
    for (auto& tau : jumps_) {
        if (std::cmp_not_equal(tau.size(), case_.n))
            throw DomainError("InvalidJumps", "each embedding needs exactly n jumps");
        std::sort(tau.begin(), tau.end(), std::greater<>());
    }
    if (minuscule() && !p_divisible_check(newton_.slopes))
        throw DomainError("SlopeOutOfRange",
                          "minuscule data requires Newton slopes in [0, 1]");
    if (case_.kind != Case::EL && !is_symmetric(newton_poly()))
        throw DomainError("NotSymmetric", "PEL data requires a symmetric Newton polygon");
    if (hn_ && hn_->width() != Rat(case_.n))
        throw DomainError("WidthMismatch", "attached HN polygon must have width n");
}

bool FilteredInvariant::minuscule() const {
    for (const auto& tau : jumps_)
        for (const auto j : tau)
            if (j != 0 && j != 1) return false;
    return true;
}

std::optional<MuData> FilteredInvariant::mu() const {
    if (!minuscule()) return std::nullopt;
    MuData m;
    for (const auto& tau : jumps_) {
        const auto ones = std::count(tau.begin(), tau.end(), 1);
        m.pairs.emplace_back(ones, static_cast<std::int64_t>(tau.size()) - ones);
    }
    return m;
}

ConcavePolygon FilteredInvariant::newton_poly() const { return normalized_newton(newton_); }

ConcavePolygon FilteredInvariant::hodge_poly() const {
    std::vector<ConcavePolygon> per_tau;
    per_tau.reserve(jumps_.size());
    for (const auto& tau : jumps_) {
        std::vector<std::pair<Rat, Rat>> pairs;
        for (const auto j : tau) pairs.emplace_back(Rat(j), Rat(1));
        per_tau.push_back(ConcavePolygon::from_slopes(pairs));
    }
    return average(per_tau);
}

Rat t_H(const FilteredInvariant& inv) {
    std::int64_t total = 0;
    for (const auto& tau : inv.jumps())
        for (const auto j : tau) total += j;
    return Rat(total);
}

Rat t_H_normalized(const FilteredInvariant& inv) { return t_H(inv) / Rat(inv.d()); }

bool admissible_check(const FilteredInvariant& inv) {
    if (t_N(inv.newton().slopes) != t_H(inv)) return false;
    const auto newt = inv.newton_poly();
    if (!leq(newt, inv.hodge_poly())) return false;
    if (inv.hn() && !leq(*inv.hn(), newt)) return false;
    return true;
}

std::vector<std::pair<Point, Point>> detect_hn(const FilteredInvariant& inv) {
    if (!admissible_check(inv))
        throw DomainError("NotAdmissible",
                          "invariant fails the polygon-level admissibility conditions");
    const auto newt = inv.newton_poly();
    const auto contacts = contact_break_points(newt, inv.hodge_poly());

    std::vector<std::pair<Point, Point>> pairs;
    for (const auto& x : contacts) {
        if (inv.case_data().kind == Case::EL) {
            pairs.emplace_back(x, x);
        } else if (Rat(2) * x.x <= Rat(inv.n())) {
            pairs.emplace_back(x, symmetric_point(newt, x));
        }
    }
    return pairs;
}

namespace {

// Embeddings paired by the involution: the half-turn for PEL_U, the
// identity for PEL_C.
std::size_t involution_index(const CaseData& cs, std::size_t tau) {
    if (cs.kind == Case::PEL_U) return (tau + static_cast<std::size_t>(cs.d / 2)) % cs.d;
    return tau;
}

struct SplitParts {
    std::vector<ConcavePolygon> parts;
};

// Splits a polygon at one or two interior abscissae (two when lo < hi).
SplitParts split_polygon(const ConcavePolygon& p, const Rat& lo, const Rat& hi) {
    SplitParts out;
    auto [first, rest] = split_at(p, Point{lo, p.evaluate(lo)});
    out.parts.push_back(std::move(first));
    if (lo == hi) {
        out.parts.push_back(std::move(rest));
        return out;
    }
    auto [mid, last] = split_at(rest, Point{hi - lo, rest.evaluate(hi - lo)});
    out.parts.push_back(std::move(mid));
    out.parts.push_back(std::move(last));
    return out;
}

CheckResult failed(std::string witness) { return {false, true, std::move(witness)}; }
CheckResult vacuous() { return {true, false, "vacuous"}; }

}  // namespace

HNDecomposition decompose(const FilteredInvariant& inv, const Point& x, const Point& xhat) {
    const auto pairs = detect_hn(inv);
    if (std::find(pairs.begin(), pairs.end(), std::pair{x, xhat}) == pairs.end())
        throw DomainError("NotContactPair",
                          "(" + x.x.str() + ", " + x.y.str() + ") with mirror (" + xhat.x.str() +
                              ", " + xhat.y.str() + ") is not a detected contact pair");

    const bool two_piece = (x == xhat);
    const auto d = inv.d();

    // Newton pieces.
    std::vector<FIsocrystal> newton_pieces;
    if (two_piece) {
        auto [a, b] = hn_split(inv.newton(), x);
        newton_pieces = {std::move(a), std::move(b)};
    } else {
        auto [a, b, c] = three_way_split(inv.newton(), x, xhat);
        newton_pieces = {std::move(a), std::move(b), std::move(c)};
    }

    // Filtration pieces: earliest piece takes each embedding's largest jumps.
    std::vector<std::int64_t> widths;
    const std::int64_t n1 = x.x.num().get_si();
    if (two_piece) {
        widths = {n1, inv.n() - n1};
    } else {
        const std::int64_t n2 = (xhat.x - x.x).num().get_si();
        widths = {n1, n2, inv.n() - n1 - n2};
    }

    // Optional HN pieces, only when the parent polygon honors the contacts.
    std::vector<std::optional<ConcavePolygon>> hn_pieces(widths.size(), std::nullopt);
    if (inv.hn() && hn_passes_contacts(*inv.hn(), x, xhat)) {
        auto parts = split_polygon(*inv.hn(), x.x, xhat.x);
        for (std::size_t i = 0; i < parts.parts.size(); ++i) hn_pieces[i] = std::move(parts.parts[i]);
    }

    HNDecomposition dec;
    dec.x = x;
    dec.xhat = xhat;
    std::int64_t offset = 0;
    for (std::size_t piece = 0; piece < widths.size(); ++piece) {
        std::vector<std::vector<std::int64_t>> jumps;
        jumps.reserve(inv.jumps().size());
        for (const auto& tau : inv.jumps())
            jumps.emplace_back(tau.begin() + offset, tau.begin() + offset + widths[piece]);
        offset += widths[piece];

        FilteredInvariant part(CaseData{Case::EL, d, widths[piece]}, newton_pieces[piece],
                               std::move(jumps), hn_pieces[piece]);
        if (!admissible_check(part))
            throw DomainError("PieceNotAdmissible",
                              "piece " + std::to_string(piece + 1) +
                                  " fails t_N = t_H; the contact pair is inconsistent");
        dec.pieces.push_back(std::move(part));
    }

    dec.verdicts = verify(dec, inv);
    return dec;
}

VerificationReport verify(const HNDecomposition& dec, const FilteredInvariant& parent) {
    VerificationReport report;
    const auto expect_pieces = (dec.x == dec.xhat) ? 2u : 3u;
    if (dec.pieces.size() != expect_pieces) {
        report.newton_split = failed("expected " + std::to_string(expect_pieces) + " pieces, got " +
                                     std::to_string(dec.pieces.size()));
        report.hodge_split = report.newton_split;
        report.hn_contacts = report.newton_split;
        report.pel_duality = report.newton_split;
        report.pieces_admissible = report.newton_split;
        return report;
    }

    // (a) Newton polygons of the pieces are the split parts of the parent's.
    try {
        const auto parts = split_polygon(parent.newton_poly(), dec.x.x, dec.xhat.x);
        for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
            if (dec.pieces[i].newton_poly() != parts.parts[i]) {
                report.newton_split =
                    failed("piece " + std::to_string(i + 1) + " Newton polygon differs");
                break;
            }
        }
    } catch (const DomainError& e) {
        report.newton_split = failed(e.what());
    }

    // (b) Hodge polygons of the pieces are the split parts of the parent's.
    try {
        const auto parts = split_polygon(parent.hodge_poly(), dec.x.x, dec.xhat.x);
        for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
            if (dec.pieces[i].hodge_poly() != parts.parts[i]) {
                report.hodge_split =
                    failed("piece " + std::to_string(i + 1) + " Hodge polygon differs");
                break;
            }
        }
    } catch (const DomainError& e) {
        report.hodge_split = failed(e.what());
    }

    // (c) The parent HN polygon passes the contacts and splits into the
    // piece HN polygons.
    if (!parent.hn()) {
        report.hn_contacts = vacuous();
    } else if (!hn_passes_contacts(*parent.hn(), dec.x, dec.xhat)) {
        report.hn_contacts = failed("parent HN polygon misses a contact point");
    } else {
        try {
            const auto parts = split_polygon(*parent.hn(), dec.x.x, dec.xhat.x);
            for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
                if (!dec.pieces[i].hn()) {
                    report.hn_contacts = failed("piece " + std::to_string(i + 1) +
                                                " carries no HN polygon");
                    break;
                }
                if (*dec.pieces[i].hn() != parts.parts[i]) {
                    report.hn_contacts =
                        failed("piece " + std::to_string(i + 1) + " HN part differs");
                    break;
                }
            }
        } catch (const DomainError& e) {
            report.hn_contacts = failed(e.what());
        }
    }

    // (d) PEL duality between the outer pieces; the middle one is self-dual.
    if (parent.case_data().kind == Case::EL || !parent.minuscule()) {
        report.pel_duality = vacuous();
    } else {
        const auto& first = dec.pieces.front();
        const auto& last = dec.pieces.back();
        if (dual_slopes(last.newton().slopes, DualMode::PDual) != first.newton().slopes) {
            report.pel_duality = failed("outer Newton pieces are not dual");
        } else {
            const auto mu1 = *first.mu();
            const auto mu3 = *last.mu();
            for (std::size_t tau = 0; tau < mu1.pairs.size() && report.pel_duality.ok; ++tau) {
                const auto ts = involution_index(parent.case_data(), tau);
                if (mu3.pairs[ts].first != mu1.pairs[tau].second ||
                    mu3.pairs[ts].second != mu1.pairs[tau].first)
                    report.pel_duality =
                        failed("outer Hodge pairs not mirrored at tau = " + std::to_string(tau));
            }
            if (report.pel_duality.ok && dec.pieces.size() == 3) {
                const auto& mid = dec.pieces[1];
                if (dual_slopes(mid.newton().slopes, DualMode::PDual) != mid.newton().slopes) {
                    report.pel_duality = failed("middle Newton piece is not self-dual");
                } else {
                    const auto mu2 = *mid.mu();
                    for (std::size_t tau = 0; tau < mu2.pairs.size() && report.pel_duality.ok;
                         ++tau) {
                        const auto ts = involution_index(parent.case_data(), tau);
                        if (mu2.pairs[ts].first != mu2.pairs[tau].second)
                            report.pel_duality = failed("middle Hodge pairs not self-mirrored at tau = " +
                                                        std::to_string(tau));
                    }
                }
            }
        }
    }

    // (e) Every piece passes the polygon-level admissibility equalities.
    for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
        if (!admissible_check(dec.pieces[i]) ||
            t_N(dec.pieces[i].newton().slopes) != t_H(dec.pieces[i])) {
            report.pieces_admissible =
                failed("piece " + std::to_string(i + 1) + " fails t_N = t_H admissibility");
            break;
        }
    }

    return report;
}

bool hn_passes_contacts(const ConcavePolygon& hn, const Point& x, const Point& xhat) {
    for (const auto& p : {x, xhat}) {
        if (p.x.sign() < 0 || p.x > hn.width()) return false;
        if (hn.evaluate(p.x) != p.y) return false;
        if (p.x.sign() == 0 || p.x == hn.width()) continue;  // polygon endpoint
        const auto breaks = hn.break_points();
        if (std::find(breaks.begin(), breaks.end(), p) == breaks.end()) return false;
    }
    return true;
}

}  // namespace hnpoly
