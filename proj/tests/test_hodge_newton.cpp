#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hnpoly/hodge_newton.hpp"
#include "test_support.hpp"

using namespace hnpoly;
using namespace hnpoly::testing;

namespace {

SlopeMultiset ms(std::vector<std::pair<Rat, std::int64_t>> entries) {
    return SlopeMultiset(std::move(entries));
}

const CaseData GL2{Case::EL, 1, 2};
const CaseData GSP4{Case::PEL_C, 1, 4};
const CaseData GU12{Case::PEL_U, 2, 3};

FilteredInvariant gl2_ordinary(std::optional<ConcavePolygon> hn = std::nullopt) {
    return FilteredInvariant(GL2, FIsocrystal(ms({{rat(1), 1}, {rat(0), 1}}), 1),
                             MuData{{{1, 1}}}, std::move(hn));
}

FilteredInvariant gsp4_middle() {
    return FilteredInvariant(GSP4, FIsocrystal(ms({{rat(1), 1}, {rat(1, 2), 2}, {rat(0), 1}}), 1),
                             MuData{{{2, 2}}});
}

FilteredInvariant gu12_nonbasic() {
    return FilteredInvariant(GU12,
                             FIsocrystal(ms({{rat(1), 2}, {rat(1, 2), 2}, {rat(0), 2}}), 2),
                             MuData{{{1, 2}, {2, 1}}});
}

}  // namespace

TEST_CASE("filtered invariant construction") {
    CHECK_NOTHROW(gl2_ordinary());
    CHECK_NOTHROW(gsp4_middle());
    CHECK_NOTHROW(gu12_nonbasic());

    // Height must be d*n.
    CHECK_THROWS_AS(FilteredInvariant(GL2, FIsocrystal(ms({{rat(1), 1}}), 1), MuData{{{1, 1}}}),
                    DomainError);
    // PEL Newton data must be symmetric.
    CHECK_THROWS_AS(FilteredInvariant(GSP4, FIsocrystal(ms({{rat(1), 3}, {rat(0), 1}}), 1),
                                      MuData{{{2, 2}}}),
                    DomainError);
    // Minuscule data needs slopes in [0,1].
    CHECK_THROWS_AS(FilteredInvariant(GL2, FIsocrystal(ms({{rat(2), 1}, {rat(0), 1}}), 1),
                                      MuData{{{1, 1}}}),
                    DomainError);
    // Attached HN polygon must span [0, n].
    CHECK_THROWS_AS(gl2_ordinary(poly({{rat(1, 2), rat(3)}})), DomainError);

    // Jump bookkeeping round-trips through mu().
    auto inv = gu12_nonbasic();
    CHECK(inv.minuscule());
    REQUIRE(inv.mu().has_value());
    CHECK(*inv.mu() == MuData{{{1, 2}, {2, 1}}});
    CHECK(inv.jumps() == std::vector<std::vector<std::int64_t>>{{1, 0, 0}, {1, 1, 0}});
}

TEST_CASE("t_H") {
    CHECK(t_H(gu12_nonbasic()) == rat(3));
    CHECK(t_H_normalized(gu12_nonbasic()) == rat(3, 2));
    CHECK(t_H(gl2_ordinary()) == rat(1));
    auto zero = FilteredInvariant(CaseData{Case::EL, 1, 2}, FIsocrystal(ms({{rat(0), 2}}), 1),
                                  MuData{{{0, 2}}});
    CHECK(t_H(zero) == rat(0));
}

TEST_CASE("admissible_check") {
    CHECK(admissible_check(gl2_ordinary()));
    CHECK(admissible_check(gsp4_middle()));
    CHECK(admissible_check(gu12_nonbasic()));

    // Endpoint mismatch: t_N = 2 against t_H = 1.
    auto bad = FilteredInvariant(GL2, FIsocrystal(ms({{rat(1), 2}}), 1), MuData{{{1, 1}}});
    CHECK_FALSE(admissible_check(bad));

    // Newton above Hodge: slopes {1,0} against mu = (0,2).
    auto above = FilteredInvariant(GL2, FIsocrystal(ms({{rat(1, 2), 2}}), 1), MuData{{{1, 1}}});
    CHECK(admissible_check(above));

    // An attached HN polygon must sit below Newton.
    auto hn_bad = gl2_ordinary(poly({{rat(1), rat(1)}, {rat(0), rat(1)}}));
    CHECK(admissible_check(hn_bad));  // equality is allowed
    CHECK_FALSE(admissible_check(
        FilteredInvariant(GL2, FIsocrystal(ms({{rat(1, 2), 2}}), 1), MuData{{{1, 1}}},
                          poly({{rat(1), rat(1)}, {rat(0), rat(1)}}))));
}

TEST_CASE("detect_hn") {
    SUBCASE("GSp4 middle stratum") {
        auto pairs = detect_hn(gsp4_middle());
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].first == pt(1, 1));
        CHECK(pairs[0].second == pt(3, 2));
    }
    SUBCASE("GSp4 basic stratum has no contact pair") {
        auto basic = FilteredInvariant(GSP4, FIsocrystal(ms({{rat(1, 2), 4}}), 1), MuData{{{2, 2}}});
        CHECK(detect_hn(basic).empty());
    }
    SUBCASE("GU(1,2) nonbasic stratum") {
        auto pairs = detect_hn(gu12_nonbasic());
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].first == pt(1, 1));
        CHECK(pairs[0].second == pt(rat(2), rat(3, 2)));
    }
    SUBCASE("EL pairs duplicate the contact point") {
        auto pairs = detect_hn(gl2_ordinary());
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].first == pt(1, 1));
        CHECK(pairs[0].second == pt(1, 1));
    }
    SUBCASE("non-admissible input is rejected") {
        auto bad = FilteredInvariant(GL2, FIsocrystal(ms({{rat(1), 2}}), 1), MuData{{{1, 1}}});
        CHECK_THROWS_AS(detect_hn(bad), DomainError);
    }
}

TEST_CASE("decompose GSp4") {
    auto dec = decompose(gsp4_middle(), pt(1, 1), pt(3, 2));
    REQUIRE(dec.pieces.size() == 3);
    CHECK(dec.pieces[0].newton().slopes == ms({{rat(1), 1}}));
    CHECK(dec.pieces[1].newton().slopes == ms({{rat(1, 2), 2}}));
    CHECK(dec.pieces[2].newton().slopes == ms({{rat(0), 1}}));
    CHECK(*dec.pieces[0].mu() == MuData{{{1, 0}}});
    CHECK(*dec.pieces[1].mu() == MuData{{{1, 1}}});
    CHECK(*dec.pieces[2].mu() == MuData{{{0, 1}}});
    CHECK(dec.verdicts.all_ok());
    CHECK(dec.verdicts.hn_contacts.applicable == false);  // no HN polygon attached
}

TEST_CASE("decompose GU(1,2)") {
    auto dec = decompose(gu12_nonbasic(), pt(1, 1), pt(rat(2), rat(3, 2)));
    REQUIRE(dec.pieces.size() == 3);
    CHECK(dec.pieces[0].newton().slopes == ms({{rat(1), 2}}));
    CHECK(dec.pieces[1].newton().slopes == ms({{rat(1, 2), 2}}));
    CHECK(dec.pieces[2].newton().slopes == ms({{rat(0), 2}}));
    // Per-embedding largest-jumps rule.
    CHECK(*dec.pieces[0].mu() == MuData{{{1, 0}, {1, 0}}});
    CHECK(*dec.pieces[1].mu() == MuData{{{0, 1}, {1, 0}}});
    CHECK(*dec.pieces[2].mu() == MuData{{{0, 1}, {0, 1}}});
    CHECK(dec.verdicts.all_ok());
}

TEST_CASE("decompose ordinary GL2 at the coincident pair") {
    auto dec = decompose(gl2_ordinary(), pt(1, 1), pt(1, 1));
    REQUIRE(dec.pieces.size() == 2);
    CHECK(dec.pieces[0].newton().slopes == ms({{rat(1), 1}}));
    CHECK(dec.pieces[1].newton().slopes == ms({{rat(0), 1}}));
    CHECK(*dec.pieces[0].mu() == MuData{{{1, 0}}});
    CHECK(*dec.pieces[1].mu() == MuData{{{0, 1}}});
    CHECK(dec.verdicts.newton_split.ok);
    CHECK(dec.verdicts.hodge_split.ok);
    CHECK(dec.verdicts.pieces_admissible.ok);
    CHECK_FALSE(dec.verdicts.pel_duality.applicable);  // vacuous for EL
}

TEST_CASE("decompose with an attached HN polygon") {
    // HN = Newton is admissible and passes its own break points.
    auto inv = FilteredInvariant(GSP4, FIsocrystal(ms({{rat(1), 1}, {rat(1, 2), 2}, {rat(0), 1}}), 1),
                                 MuData{{{2, 2}}},
                                 poly({{rat(1), rat(1)}, {rat(1, 2), rat(2)}, {rat(0), rat(1)}}));
    auto dec = decompose(inv, pt(1, 1), pt(3, 2));
    CHECK(dec.verdicts.hn_contacts.applicable);
    CHECK(dec.verdicts.hn_contacts.ok);
    REQUIRE(dec.pieces[0].hn().has_value());
    CHECK(*dec.pieces[0].hn() == poly({{rat(1), rat(1)}}));
    CHECK(dec.verdicts.all_ok());
}

TEST_CASE("decompose rejects a non-contact pair") {
    CHECK_THROWS_AS(decompose(gsp4_middle(), pt(3, 2), pt(1, 1)), DomainError);
    CHECK_THROWS_AS(decompose(gsp4_middle(), pt(2, rat(3, 2)), pt(2, rat(3, 2))), DomainError);
}

TEST_CASE("verify flags corrupted decompositions") {
    auto parent = gu12_nonbasic();
    auto dec = decompose(parent, pt(1, 1), pt(rat(2), rat(3, 2)));
    REQUIRE(dec.verdicts.all_ok());

    SUBCASE("swapping Hodge data breaks the Hodge split with a witness") {
        auto corrupt = dec;
        // Give piece 1 the jumps of piece 3 and vice versa.
        corrupt.pieces[0] = FilteredInvariant(corrupt.pieces[0].case_data(),
                                              corrupt.pieces[0].newton(), *dec.pieces[2].mu());
        corrupt.pieces[2] = FilteredInvariant(corrupt.pieces[2].case_data(),
                                              corrupt.pieces[2].newton(), *dec.pieces[0].mu());
        auto report = verify(corrupt, parent);
        CHECK_FALSE(report.hodge_split.ok);
        CHECK(report.hodge_split.witness.find("piece 1") != std::string::npos);
    }
    SUBCASE("swapping Newton pieces breaks the Newton split") {
        auto corrupt = dec;
        std::swap(corrupt.pieces[0], corrupt.pieces[2]);
        auto report = verify(corrupt, parent);
        CHECK_FALSE(report.newton_split.ok);
    }
    SUBCASE("breaking an outer mirror flips the duality check") {
        auto corrupt = dec;
        // Replace piece 3's Hodge data by a non-mirrored variant.
        corrupt.pieces[2] = FilteredInvariant(corrupt.pieces[2].case_data(),
                                              corrupt.pieces[2].newton(),
                                              MuData{{{1, 0}, {0, 1}}});
        auto report = verify(corrupt, parent);
        CHECK_FALSE(report.pel_duality.ok);
        // The hodge split necessarily degrades too; duality is the named one.
        CHECK(report.pel_duality.witness.find("tau") != std::string::npos);
    }
}

TEST_CASE("hn_passes_contacts") {
    auto newt = poly({{rat(1), rat(1)}, {rat(1, 2), rat(2)}, {rat(0), rat(1)}});
    CHECK(hn_passes_contacts(newt, pt(1, 1), pt(3, 2)));
    // Strictly lower polygon misses the contact.
    CHECK_FALSE(hn_passes_contacts(poly({{rat(1, 2), rat(4)}}), pt(1, 1), pt(3, 2)));
    // Passing through without a break does not count...
    CHECK_FALSE(hn_passes_contacts(poly({{rat(1, 2), rat(4)}}), pt(rat(2), rat(1)), pt(rat(2), rat(1))));
    // ... unless the point is a polygon endpoint.
    CHECK(hn_passes_contacts(poly({{rat(1, 2), rat(4)}}), pt(0, 0), pt(4, 2)));
    // Out-of-range points are simply not passed.
    CHECK_FALSE(hn_passes_contacts(newt, pt(5, 1), pt(3, 2)));
}

TEST_CASE("decompose round-trips over every contact pair of validated strata") {
    struct Datum {
        CaseData cs;
        MuData m;
    };
    const std::vector<Datum> data = {
        {GL2, MuData{{{1, 1}}}},
        {GSP4, MuData{{{2, 2}}}},
        {GU12, MuData{{{1, 2}, {2, 1}}}},
        {CaseData{Case::PEL_U, 2, 4}, MuData{{{1, 3}, {3, 1}}}},
        {CaseData{Case::EL, 2, 3}, MuData{{{2, 1}, {1, 2}}}},
    };
    for (const auto& [cs, m] : data) {
        CAPTURE(case_name(cs.kind));
        CAPTURE(cs.n);
        for (const auto& nu : enumerate_B(cs, m)) {
            FilteredInvariant inv(cs, nu.slopes_raw, m, nu.poly);  // HN = Newton
            REQUIRE(admissible_check(inv));
            for (const auto& [x, xhat] : detect_hn(inv)) {
                auto dec = decompose(inv, x, xhat);
                CHECK(dec.verdicts.all_ok());
                // Concatenation identities.
                Rat tn_sum, th_sum;
                std::int64_t width_sum = 0;
                for (const auto& piece : dec.pieces) {
                    tn_sum += t_N(piece.newton().slopes);
                    th_sum += t_H(piece);
                    width_sum += piece.n();
                }
                CHECK(tn_sum == t_N(inv.newton().slopes));
                CHECK(th_sum == t_H(inv));
                CHECK(width_sum == inv.n());
            }
        }
    }
}

TEST_CASE("decomposing the dualized parent mirrors the pieces") {
    auto parent = gu12_nonbasic();
    auto dec = decompose(parent, pt(1, 1), pt(rat(2), rat(3, 2)));
    // The PEL parent is self-dual, so dualizing maps the decomposition at
    // (x, xhat) to itself with the outer pieces exchanged and dualized.
    auto dual_parent = FilteredInvariant(
        parent.case_data(), FIsocrystal(dual_slopes(parent.newton().slopes, DualMode::PDual), 2),
        *parent.mu());
    auto dual_dec = decompose(dual_parent, pt(1, 1), pt(rat(2), rat(3, 2)));
    REQUIRE(dual_dec.pieces.size() == 3);
    CHECK(dual_dec.pieces[0].newton().slopes ==
          dual_slopes(dec.pieces[2].newton().slopes, DualMode::PDual));
    CHECK(dual_dec.pieces[2].newton().slopes ==
          dual_slopes(dec.pieces[0].newton().slopes, DualMode::PDual));
}

TEST_CASE("general jump data decomposes when contacts exist") {
    // Non-minuscule jumps {2,0} against Newton slopes {2,0}: the step
    // polygon contacts at its break.
    auto inv = FilteredInvariant(CaseData{Case::EL, 1, 2},
                                 FIsocrystal(ms({{rat(2), 1}, {rat(0), 1}}), 1),
                                 std::vector<std::vector<std::int64_t>>{{2, 0}});
    CHECK_FALSE(inv.minuscule());
    CHECK(t_H(inv) == rat(2));
    CHECK(admissible_check(inv));
    auto pairs = detect_hn(inv);
    REQUIRE(pairs.size() == 1);
    auto dec = decompose(inv, pairs[0].first, pairs[0].second);
    CHECK(dec.verdicts.newton_split.ok);
    CHECK(dec.verdicts.hodge_split.ok);
    CHECK(dec.verdicts.pieces_admissible.ok);
    CHECK_FALSE(dec.verdicts.pel_duality.applicable);
}

TEST_CASE("forced equality at contacts for synthesized HN polygons") {
    // Any envelope of subobject points that includes the decomposition
    // points and stays below Newton is pinched onto them.
    Rng rng(107);
    auto parent = gsp4_middle();
    const auto newt = parent.newton_poly();
    const auto pairs = detect_hn(parent);
    REQUIRE_FALSE(pairs.empty());
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<Point> pts{pairs[0].first, pairs[0].second};
        for (int k = 0; k < 5; ++k) {
            const Rat x = rand_rat(rng, rat(0), newt.width(), 4);
            const Rat on = newt.evaluate(x);
            const Rat lo = max(rat(0), x - (newt.width() - newt.end_height()));
            if (lo > on) continue;
            pts.push_back({x, rand_rat(rng, lo, on, 4)});
        }
        pts.push_back({rat(0), rat(0)});
        pts.push_back({newt.width(), newt.end_height()});
        auto hn = concave_envelope(pts, {newt.width(), newt.end_height()});
        REQUIRE(leq(hn, newt));
        CHECK(hn.evaluate(pairs[0].first.x) == pairs[0].first.y);
        CHECK(hn.evaluate(pairs[0].second.x) == pairs[0].second.y);
    }
}
