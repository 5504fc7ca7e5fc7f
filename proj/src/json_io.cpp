#include "hnpoly/json_io.hpp"

namespace hnpoly::json {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
    throw DomainError("SchemaError", what);
}

std::int64_t decode_int(const json& j, const char* what) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        schema_error(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::int64_t require_int_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        schema_error(std::string("missing integer field '") + key + "'");
    return decode_int(j.at(key), key);
}

const json& require_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        schema_error(std::string("missing field '") + key + "'");
    return j.at(key);
}

json encode_check(const CheckResult& c) {
    json out{{"ok", c.ok}, {"applicable", c.applicable}};
    if (!c.ok) out["witness"] = c.witness;
    return out;
}

CheckResult decode_check(const json& j) {
    CheckResult c;
    c.ok = require_field(j, "ok").get<bool>();
    c.applicable = require_field(j, "applicable").get<bool>();
    if (j.contains("witness")) c.witness = j.at("witness").get<std::string>();
    return c;
}

}  // namespace

json encode(const Rat& r) {
    if (!r.num().fits_slong_p() || !r.den().fits_slong_p())
        throw DomainError("ValueTooLarge",
                          "rational " + r.str() + " exceeds the 64-bit wire format");
    return json::array({r.num().get_si(), r.den().get_si()});
}

Rat decode_rat(const json& j) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Rat(j.get<std::int64_t>());
    if (!j.is_array() || j.size() != 2)
        schema_error("rational must be [num, den] or an integer");
    return Rat(decode_int(j[0], "numerator"), decode_int(j[1], "denominator"));
}

json encode(const Point& p) { return json{{"x", encode(p.x)}, {"y", encode(p.y)}}; }

Point decode_point(const json& j) {
    if (j.is_array() && j.size() == 2) return {decode_rat(j[0]), decode_rat(j[1])};
    if (j.is_object()) return {decode_rat(require_field(j, "x")), decode_rat(require_field(j, "y"))};
    schema_error("point must be {\"x\":...,\"y\":...} or [x, y]");
}

json encode(const ConcavePolygon& p) {
    json segs = json::array();
    for (const auto& s : p.segments())
        segs.push_back(json{{"slope", encode(s.slope)}, {"width", encode(s.width)}});
    return json{{"segments", segs}};
}

ConcavePolygon decode_polygon(const json& j) {
    const auto& segs = require_field(j, "segments");
    if (!segs.is_array()) schema_error("'segments' must be an array");
    std::vector<std::pair<Rat, Rat>> pairs;
    for (const auto& s : segs)
        pairs.emplace_back(decode_rat(require_field(s, "slope")),
                           decode_rat(require_field(s, "width")));
    return ConcavePolygon::from_slopes(pairs);
}

namespace {

json encode_slope_entries(const SlopeMultiset& s) {
    json slopes = json::array();
    for (const auto& [lambda, mult] : s.entries())
        slopes.push_back(json{{"lambda", encode(lambda)}, {"mult", mult}});
    return slopes;
}

std::vector<std::pair<Rat, std::int64_t>> decode_slope_entries(const json& j) {
    if (!j.is_array()) schema_error("'slopes' must be an array");
    std::vector<std::pair<Rat, std::int64_t>> entries;
    for (const auto& e : j)
        entries.emplace_back(decode_rat(require_field(e, "lambda")), require_int_field(e, "mult"));
    return entries;
}

}  // namespace

json encode(const SlopeMultiset& s) {
    return json{{"slopes", encode_slope_entries(s)}, {"strict_dm", s.strict_dm()}};
}

SlopeMultiset decode_multiset(const json& j) {
    const bool strict = j.is_object() && j.contains("strict_dm") ? j.at("strict_dm").get<bool>() : true;
    return SlopeMultiset(decode_slope_entries(require_field(j, "slopes")), strict);
}

json encode(const FIsocrystal& iso) {
    auto out = encode(iso.slopes);
    out["d"] = iso.d;
    return out;
}

FIsocrystal decode_fisocrystal(const json& j) {
    const std::int64_t d = j.is_object() && j.contains("d") ? require_int_field(j, "d") : 1;
    return FIsocrystal(decode_multiset(j), d);
}

json encode(const CaseData& cs, const MuData& mu) {
    json pairs = json::array();
    for (const auto& [p, q] : mu.pairs) pairs.push_back(json::array({p, q}));
    return json{{"case", case_name(cs.kind)}, {"d", cs.d}, {"n", cs.n}, {"mu", pairs}};
}

std::pair<CaseData, MuData> decode_datum(const json& j) {
    CaseData cs;
    cs.kind = case_from_name(require_field(j, "case").get<std::string>());
    cs.d = require_int_field(j, "d");
    cs.n = require_int_field(j, "n");
    MuData mu;
    const auto& pairs = require_field(j, "mu");
    if (!pairs.is_array()) schema_error("'mu' must be an array of [p, q] pairs");
    for (const auto& pq : pairs) {
        if (!pq.is_array() || pq.size() != 2) schema_error("each mu entry must be [p, q]");
        mu.pairs.emplace_back(decode_int(pq[0], "p"), decode_int(pq[1], "q"));
    }
    return {cs, mu};
}

json encode(const NewtonPoint& np) {
    return json{{"poly", encode(np.poly)}, {"isocrystal", encode(np.slopes_raw)}};
}

json encode(const StrataEntry& entry) {
    json contacts = json::array();
    for (const auto& p : entry.contact_break_points) contacts.push_back(encode(p));
    return json{{"newton", encode(entry.newton)},
                {"basic", entry.basic},
                {"contact_break_points", contacts},
                {"hn_condition", entry.hn_condition},
                {"dim", encode(entry.dim)}};
}

json encode(const StrataReport& report) {
    json out = json::array();
    for (const auto& entry : report) out.push_back(encode(entry));
    return out;
}

json encode(const SubobjectCloud& cloud) {
    json pts = json::array();
    for (const auto& p : cloud.points) pts.push_back(encode(p));
    return json{{"ht", cloud.ambient.ht}, {"deg", encode(cloud.ambient.deg)}, {"points", pts}};
}

SubobjectCloud decode_cloud(const json& j) {
    FfgsInvariants ambient(require_int_field(j, "ht"), decode_rat(require_field(j, "deg")));
    const auto& pts = require_field(j, "points");
    if (!pts.is_array()) schema_error("'points' must be an array");
    std::vector<Point> points;
    for (const auto& p : pts) points.push_back(decode_point(p));
    return SubobjectCloud(ambient, std::move(points));
}

json encode(const OmegaDivisors& omega) {
    json per_tau = json::array();
    for (const auto& exps : omega.per_tau) {
        json tau = json::array();
        for (const auto& a : exps) tau.push_back(encode(a));
        per_tau.push_back(tau);
    }
    return json{{"d", omega.d}, {"ht", omega.ht}, {"per_tau", per_tau}};
}

OmegaDivisors decode_omega(const json& j) {
    const auto& per_tau = require_field(j, "per_tau");
    if (!per_tau.is_array()) schema_error("'per_tau' must be an array of exponent arrays");
    std::vector<std::vector<Rat>> exps;
    for (const auto& tau : per_tau) {
        if (!tau.is_array()) schema_error("each per_tau entry must be an array");
        std::vector<Rat> e;
        for (const auto& a : tau) e.push_back(decode_rat(a));
        exps.push_back(std::move(e));
    }
    return OmegaDivisors(require_int_field(j, "d"), require_int_field(j, "ht"), std::move(exps));
}

json encode(const TorsionTower& tower) {
    json clouds = json::array();
    for (const auto& c : tower.clouds) clouds.push_back(encode(c));
    return json{{"d", tower.d}, {"clouds", clouds}};
}

TorsionTower decode_tower(const json& j) {
    const auto& clouds = require_field(j, "clouds");
    if (!clouds.is_array()) schema_error("'clouds' must be an array");
    std::vector<SubobjectCloud> levels;
    for (const auto& c : clouds) levels.push_back(decode_cloud(c));
    return TorsionTower(require_int_field(j, "d"), std::move(levels));
}

json encode(const TowerLimit& limit) {
    json violations = json::array();
    for (const auto& v : limit.violations)
        violations.push_back(json{{"i", v.i}, {"m", v.m}, {"x", encode(v.x)}});
    return json{{"limit", encode(limit.limit)},
                {"violations", violations},
                {"levels", limit.levels}};
}

json encode(const ChainVerdict& verdict) {
    json out{{"hn_le_newt", verdict.hn_le_newt}, {"newt_le_hdg", verdict.newt_le_hdg}};
    if (verdict.witness) out["witness"] = encode(*verdict.witness);
    return out;
}

json encode(const MuValidation& v) {
    return json{{"result", v.ok}, {"reasons", v.reasons}};
}

json encode(const FilteredInvariant& inv) {
    json out{{"case", case_name(inv.case_data().kind)},
             {"d", inv.d()},
             {"n", inv.n()},
             {"newton", encode(inv.newton())}};
    if (const auto mu = inv.mu()) {
        json pairs = json::array();
        for (const auto& [p, q] : mu->pairs) pairs.push_back(json::array({p, q}));
        out["mu"] = pairs;
    } else {
        out["jumps"] = inv.jumps();
    }
    if (inv.hn()) out["hn"] = encode(*inv.hn());
    return out;
}

FilteredInvariant decode_invariant(const json& j) {
    CaseData cs;
    cs.kind = case_from_name(require_field(j, "case").get<std::string>());
    cs.d = require_int_field(j, "d");
    cs.n = require_int_field(j, "n");
    auto newton = decode_fisocrystal(require_field(j, "newton"));
    std::optional<ConcavePolygon> hn;
    if (j.contains("hn")) hn = decode_polygon(j.at("hn"));

    if (j.contains("jumps")) {
        const auto& jt = j.at("jumps");
        if (!jt.is_array()) schema_error("'jumps' must be an array of integer arrays");
        std::vector<std::vector<std::int64_t>> jumps;
        for (const auto& tau : jt) {
            if (!tau.is_array()) schema_error("each jumps entry must be an array");
            std::vector<std::int64_t> row;
            for (const auto& v : tau) row.push_back(decode_int(v, "jump"));
            jumps.push_back(std::move(row));
        }
        return FilteredInvariant(cs, std::move(newton), std::move(jumps), std::move(hn));
    }

    MuData mu;
    const auto& pairs = require_field(j, "mu");
    if (!pairs.is_array()) schema_error("'mu' must be an array of [p, q] pairs");
    for (const auto& pq : pairs) {
        if (!pq.is_array() || pq.size() != 2) schema_error("each mu entry must be [p, q]");
        mu.pairs.emplace_back(decode_int(pq[0], "p"), decode_int(pq[1], "q"));
    }
    return FilteredInvariant(cs, std::move(newton), mu, std::move(hn));
}

json encode(const VerificationReport& report) {
    return json{{"newton_split", encode_check(report.newton_split)},
                {"hodge_split", encode_check(report.hodge_split)},
                {"hn_contacts", encode_check(report.hn_contacts)},
                {"pel_duality", encode_check(report.pel_duality)},
                {"pieces_admissible", encode_check(report.pieces_admissible)}};
}

json encode(const HNDecomposition& dec) {
    json pieces = json::array();
    for (const auto& piece : dec.pieces) pieces.push_back(encode(piece));
    return json{{"x", encode(dec.x)},
                {"xhat", encode(dec.xhat)},
                {"pieces", pieces},
                {"checks", encode(dec.verdicts)}};
}

HNDecomposition decode_decomposition(const json& j) {
    HNDecomposition dec;
    dec.x = decode_point(require_field(j, "x"));
    dec.xhat = decode_point(require_field(j, "xhat"));
    const auto& pieces = require_field(j, "pieces");
    if (!pieces.is_array()) schema_error("'pieces' must be an array");
    for (const auto& piece : pieces) dec.pieces.push_back(decode_invariant(piece));
    const auto& checks = require_field(j, "checks");
    dec.verdicts.newton_split = decode_check(require_field(checks, "newton_split"));
    dec.verdicts.hodge_split = decode_check(require_field(checks, "hodge_split"));
    dec.verdicts.hn_contacts = decode_check(require_field(checks, "hn_contacts"));
    dec.verdicts.pel_duality = decode_check(require_field(checks, "pel_duality"));
    dec.verdicts.pieces_admissible = decode_check(require_field(checks, "pieces_admissible"));
    return dec;
}

}  // namespace hnpoly::json
