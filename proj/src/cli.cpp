#include "hnpoly/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "hnpoly/json_io.hpp"
#include "hnpoly/svg.hpp"

namespace hnpoly {

namespace {

namespace jio = hnpoly::json;
using Json = jio::json;

constexpr const char* kSchema = "hnpoly/1";

struct Flags {
    std::string in = "-";
    std::string out = "-";
    std::string case_tag;
    std::int64_t d = 0;
    std::int64_t n = 0;
    std::string mu;
    std::int64_t max_denominator = 0;
    std::string svg;
    std::string at;
    std::string c = "1";
    std::int64_t div = 1;
    std::string mode = "pdual";
    double scale = 80.0;
};

struct Command {
    const Flags& flags;
    mutable std::optional<Json> input_cache;

    const Json& input() const {
        if (input_cache) return *input_cache;
        std::string text;
        if (flags.in == "-") {
            std::ostringstream buf;
            buf << std::cin.rdbuf();
            text = buf.str();
        } else {
            std::ifstream file(flags.in);
            if (!file) throw DomainError("IoError", "cannot open input file '" + flags.in + "'");
            std::ostringstream buf;
            buf << file.rdbuf();
            text = buf.str();
        }
        Json parsed;
        try {
            parsed = Json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw DomainError("ParseError", e.what());
        }
        if (parsed.is_object() && parsed.contains("schema") &&
            parsed.at("schema").get<std::string>() != kSchema)
            throw DomainError("SchemaError",
                              "unsupported schema '" + parsed.at("schema").get<std::string>() +
                                  "'");
        input_cache = std::move(parsed);
        return *input_cache;
    }

    // Group datum from --case/--d/--n/--mu flags, or from the input JSON.
    std::pair<CaseData, MuData> datum() const {
        if (flags.case_tag.empty()) return jio::decode_datum(input());
        CaseData cs;
        cs.kind = case_from_name(flags.case_tag);
        cs.d = flags.d;
        cs.n = flags.n;
        MuData mu;
        std::stringstream pairs(flags.mu);
        std::string pair;
        while (std::getline(pairs, pair, ';')) {
            const auto comma = pair.find(',');
            if (comma == std::string::npos)
                throw DomainError("ParseError", "--mu entries must look like p,q");
            mu.pairs.emplace_back(std::stoll(pair.substr(0, comma)),
                                  std::stoll(pair.substr(comma + 1)));
        }
        return {cs, mu};
    }

};

const Json& require_field_cli(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw DomainError("SchemaError", std::string("missing field '") + key + "'");
    return j.at(key);
}

struct Result {
    Json payload;
    SvgRender render;  // drawn when --svg is set
};

using Handler = std::function<Result(const Command&)>;

Json encode_pair_compact(const Point& p) {
    return Json::array({jio::encode(p.x), jio::encode(p.y)});
}

Result handle_polygon(const std::string& sub, const Command& cmd) {
    Result res;
    if (sub == "from_slopes") {
        auto p = jio::decode_polygon({{"segments", require_field_cli(cmd.input(), "slopes")}});
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "polygon", ""});
    } else if (sub == "evaluate") {
        auto p = jio::decode_polygon(require_field_cli(cmd.input(), "polygon"));
        const Rat x = cmd.flags.at.empty() ? jio::decode_rat(require_field_cli(cmd.input(), "at"))
                                           : Rat::parse(cmd.flags.at);
        res.payload = jio::encode(p.evaluate(x));
    } else if (sub == "leq") {
        res.payload = leq(jio::decode_polygon(require_field_cli(cmd.input(), "p")),
                          jio::decode_polygon(require_field_cli(cmd.input(), "q")));
    } else if (sub == "break_points") {
        auto p = jio::decode_polygon(require_field_cli(cmd.input(), "polygon"));
        res.payload = Json::array();
        for (const auto& b : p.break_points()) res.payload.push_back(jio::encode(b));
    } else if (sub == "contact_break_points") {
        auto n = jio::decode_polygon(require_field_cli(cmd.input(), "newton"));
        auto h = jio::decode_polygon(require_field_cli(cmd.input(), "hodge"));
        res.payload = Json::array();
        for (const auto& b : contact_break_points(n, h)) res.payload.push_back(jio::encode(b));
        res.render.polygons.push_back({n, "newton", ""});
        res.render.polygons.push_back({h, "hodge", ""});
        for (const auto& b : contact_break_points(n, h)) res.render.marks.push_back({b, "x"});
    } else if (sub == "normalize") {
        const auto& in = cmd.input();
        const std::int64_t d = in.contains("d") ? in.at("d").get<std::int64_t>() : cmd.flags.div;
        auto p = normalize(jio::decode_polygon(require_field_cli(in, "polygon")), d);
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "normalized", ""});
    } else if (sub == "average") {
        std::vector<ConcavePolygon> ps;
        for (const auto& pj : require_field_cli(cmd.input(), "polygons"))
            ps.push_back(jio::decode_polygon(pj));
        auto p = average(ps);
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "average", ""});
    } else if (sub == "dual") {
        auto p = dual(jio::decode_polygon(require_field_cli(cmd.input(), "polygon")),
                      Rat::parse(cmd.flags.c));
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "dual", ""});
    } else if (sub == "is_symmetric") {
        res.payload = is_symmetric(jio::decode_polygon(require_field_cli(cmd.input(), "polygon")),
                                   Rat::parse(cmd.flags.c));
    } else if (sub == "symmetric_point") {
        res.payload = jio::encode(
            symmetric_point(jio::decode_polygon(require_field_cli(cmd.input(), "polygon")),
                            jio::decode_point(require_field_cli(cmd.input(), "point"))));
    } else if (sub == "split_at") {
        auto [l, r] = split_at(jio::decode_polygon(require_field_cli(cmd.input(), "polygon")),
                               jio::decode_point(require_field_cli(cmd.input(), "point")));
        res.payload = Json{{"left", jio::encode(l)}, {"right", jio::encode(r)}};
    } else if (sub == "envelope") {
        std::vector<Point> pts;
        for (const auto& pj : require_field_cli(cmd.input(), "points"))
            pts.push_back(jio::decode_point(pj));
        auto p = concave_envelope(pts, jio::decode_point(require_field_cli(cmd.input(), "anchor")));
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "envelope", ""});
    } else {
        throw CLI::ValidationError("unknown subverb 'polygon " + sub + "'");
    }
    return res;
}

Result handle_newton(const std::string& sub, const Command& cmd) {
    Result res;
    if (sub == "polygon") {
        auto p = newton_polygon(jio::decode_multiset(cmd.input()));
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "newton", ""});
    } else if (sub == "t_n") {
        res.payload = jio::encode(t_N(jio::decode_multiset(cmd.input())));
    } else if (sub == "dual") {
        const DualMode mode = cmd.flags.mode == "minus" ? DualMode::Minus : DualMode::PDual;
        res.payload = jio::encode(dual_slopes(jio::decode_multiset(cmd.input()), mode));
    } else if (sub == "normalized") {
        auto p = normalized_newton(jio::decode_fisocrystal(cmd.input()));
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "normalized newton", ""});
    } else if (sub == "p_divisible") {
        res.payload = p_divisible_check(jio::decode_multiset(cmd.input()));
    } else if (sub == "split") {
        auto [l, r] = hn_split(jio::decode_fisocrystal(require_field_cli(cmd.input(), "isocrystal")),
                               jio::decode_point(require_field_cli(cmd.input(), "x")));
        res.payload = Json{{"left", jio::encode(l)}, {"right", jio::encode(r)}};
    } else if (sub == "split3") {
        auto [a, b, c] =
            three_way_split(jio::decode_fisocrystal(require_field_cli(cmd.input(), "isocrystal")),
                            jio::decode_point(require_field_cli(cmd.input(), "x")),
                            jio::decode_point(require_field_cli(cmd.input(), "xhat")));
        res.payload = Json{
            {"pieces", Json::array({jio::encode(a), jio::encode(b), jio::encode(c)})}};
    } else {
        throw CLI::ValidationError("unknown subverb 'newton " + sub + "'");
    }
    return res;
}

Result handle_mu(const std::string& sub, const Command& cmd) {
    Result res;
    const auto [cs, mu] = cmd.datum();
    if (sub == "validate") {
        res.payload = jio::encode(validate_mu(cs, mu));
    } else if (sub == "average") {
        auto p = mu_average(cs, mu);
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "mu average", ""});
    } else if (sub == "hodge_at_p") {
        auto p = hodge_from_mu_at_p(cs, mu);
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "hodge", ""});
    } else if (sub == "dim") {
        res.payload = jio::encode(rz_dimension(cs, mu));
    } else {
        throw CLI::ValidationError("unknown subverb 'mu " + sub + "'");
    }
    return res;
}

Result handle_bgmu(const Command& cmd) {
    Result res;
    const auto [cs, mu] = cmd.datum();
    const auto B = enumerate_B(cs, mu, cmd.flags.max_denominator);
    res.payload = Json::array();
    for (const auto& nu : B) res.payload.push_back(jio::encode(nu));
    res.render.polygons.push_back({mu_average(cs, mu), "mu average", "#000000"});
    for (std::size_t i = 0; i < B.size(); ++i)
        res.render.polygons.push_back({B[i].poly, "newton " + std::to_string(i + 1), ""});
    return res;
}

Result handle_strata(const Command& cmd) {
    Result res;
    const auto [cs, mu] = cmd.datum();
    const auto report = strata_report(cs, mu, cmd.flags.max_denominator);
    res.payload = jio::encode(report);
    res.render.polygons.push_back({mu_average(cs, mu), "mu average", "#000000"});
    for (std::size_t i = 0; i < report.size(); ++i) {
        res.render.polygons.push_back(
            {report[i].newton.poly,
             (report[i].basic ? "basic stratum " : "stratum ") + std::to_string(i + 1), ""});
        for (const auto& b : report[i].contact_break_points) res.render.marks.push_back({b, "x"});
    }
    return res;
}

Result handle_ffgs(const std::string& sub, const Command& cmd) {
    Result res;
    if (sub == "hn") {
        auto p = hn_polygon(jio::decode_cloud(cmd.input()));
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "hn", ""});
    } else if (sub == "normalized") {
        const auto& in = cmd.input();
        const auto cloud = jio::decode_cloud(in.contains("cloud") ? in.at("cloud") : in);
        const std::int64_t d = in.contains("d") ? in.at("d").get<std::int64_t>() : cmd.flags.div;
        auto p = normalized_hn(cloud, d);
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "normalized hn", ""});
    } else if (sub == "semistable") {
        res.payload = is_semistable(jio::decode_cloud(cmd.input()));
    } else if (sub == "mu_max_min") {
        auto [mx, mn] = mu_max_min(jio::decode_polygon(require_field_cli(cmd.input(), "polygon")));
        res.payload = Json{{"max", jio::encode(mx)}, {"min", jio::encode(mn)}};
    } else if (sub == "hom_vanishes") {
        res.payload = hom_vanishes(jio::decode_polygon(require_field_cli(cmd.input(), "g1")),
                                   jio::decode_polygon(require_field_cli(cmd.input(), "g2")));
    } else if (sub == "dual") {
        res.payload = jio::encode(dual_cloud(jio::decode_cloud(cmd.input())));
    } else if (sub == "fitting") {
        auto p = fitting_hodge(jio::decode_omega(cmd.input()));
        res.payload = jio::encode(p);
        res.render.polygons.push_back({p, "fitting hodge", ""});
    } else if (sub == "chain") {
        auto verdict = chain_check(jio::decode_polygon(require_field_cli(cmd.input(), "hn")),
                                   jio::decode_polygon(require_field_cli(cmd.input(), "newt")),
                                   jio::decode_polygon(require_field_cli(cmd.input(), "hdg")));
        res.payload = jio::encode(verdict);
    } else {
        throw CLI::ValidationError("unknown subverb 'ffgs " + sub + "'");
    }
    return res;
}

Result handle_tower(const std::string& sub, const Command& cmd) {
    if (sub != "limit") throw CLI::ValidationError("unknown subverb 'tower " + sub + "'");
    Result res;
    auto limit = tower_limit(jio::decode_tower(cmd.input()));
    res.payload = jio::encode(limit);
    res.render.polygons.push_back({limit.limit, "tower limit", ""});
    return res;
}

Result handle_hn(const std::string& sub, const Command& cmd) {
    Result res;
    if (sub == "t_h") {
        const auto inv = jio::decode_invariant(cmd.input());
        res.payload = Json{{"raw", jio::encode(t_H(inv))},
                                 {"normalized", jio::encode(t_H_normalized(inv))}};
    } else if (sub == "admissible") {
        const auto inv = jio::decode_invariant(cmd.input());
        res.payload = Json{{"necessary_conditions_pass", admissible_check(inv)}};
    } else if (sub == "detect") {
        const auto inv = jio::decode_invariant(cmd.input());
        res.payload = Json::array();
        for (const auto& [x, xhat] : detect_hn(inv)) {
            res.payload.push_back(Json{{"x", encode_pair_compact(x)},
                                             {"xhat", encode_pair_compact(xhat)}});
            res.render.marks.push_back({x, "x"});
            if (!(xhat == x)) res.render.marks.push_back({xhat, "x̂"});
        }
        res.render.polygons.push_back({inv.newton_poly(), "newton", ""});
        res.render.polygons.push_back({inv.hodge_poly(), "hodge", ""});
    } else if (sub == "decompose") {
        const auto& in = cmd.input();
        const auto inv =
            jio::decode_invariant(in.contains("invariant") ? in.at("invariant") : in);
        Point x, xhat;
        if (in.contains("x")) {
            x = jio::decode_point(in.at("x"));
            xhat = in.contains("xhat") ? jio::decode_point(in.at("xhat"))
                                       : symmetric_point(inv.newton_poly(), x);
            if (inv.case_data().kind == Case::EL) xhat = x;
        } else {
            const auto pairs = detect_hn(inv);
            if (pairs.empty())
                throw DomainError("NoContactPoint",
                                  "no contact break point; nothing to decompose");
            x = pairs.front().first;  // smallest abscissa by construction
            xhat = pairs.front().second;
        }
        const auto dec = decompose(inv, x, xhat);
        res.payload = jio::encode(dec);
        res.render.polygons.push_back({inv.newton_poly(), "newton", ""});
        res.render.polygons.push_back({inv.hodge_poly(), "hodge", ""});
        res.render.marks.push_back({dec.x, "x"});
        if (!(dec.xhat == dec.x)) res.render.marks.push_back({dec.xhat, "x̂"});
    } else if (sub == "verify") {
        const auto dec = jio::decode_decomposition(require_field_cli(cmd.input(), "decomposition"));
        const auto parent = jio::decode_invariant(require_field_cli(cmd.input(), "parent"));
        res.payload = jio::encode(verify(dec, parent));
    } else if (sub == "passes") {
        res.payload = hn_passes_contacts(jio::decode_polygon(require_field_cli(cmd.input(), "hn")),
                                         jio::decode_point(require_field_cli(cmd.input(), "x")),
                                         jio::decode_point(require_field_cli(cmd.input(), "xhat")));
    } else {
        throw CLI::ValidationError("unknown subverb 'hn " + sub + "'");
    }
    return res;
}

void write_output(const Flags& flags, const Json& doc, std::ostream& out) {
    const std::string text = doc.dump(2) + "\n";
    if (flags.out == "-") {
        out << text;
    } else {
        std::ofstream file(flags.out);
        if (!file) throw DomainError("IoError", "cannot open output file '" + flags.out + "'");
        file << text;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact polygon calculus for p-divisible group invariants"};
    app.name("hnpoly");

    std::string verb, subverb;
    Flags flags;
    app.add_option("verb", verb, "polygon|newton|mu|bgmu|strata|ffgs|tower|hn")->required();
    app.add_option("subverb", subverb, "operation name (bgmu and strata take none)");
    app.add_option("--in", flags.in, "input JSON path, or - for stdin");
    app.add_option("--out", flags.out, "output path, or - for stdout");
    app.add_option("--case", flags.case_tag, "EL|PEL_C|PEL_U");
    app.add_option("--d", flags.d, "degree of the unramified extension");
    app.add_option("--n", flags.n, "module rank");
    app.add_option("--mu", flags.mu, "cocharacter pairs p0,q0;p1,q1;...");
    app.add_option("--max-denominator", flags.max_denominator,
                   "slope denominator cap for enumeration (0 = exact bound)");
    app.add_option("--svg", flags.svg, "also render the result to this SVG file");
    app.add_option("--at", flags.at, "abscissa for polygon evaluate");
    app.add_option("--c", flags.c, "duality constant (default 1)");
    app.add_option("--div", flags.div, "normalization divisor");
    app.add_option("--mode", flags.mode, "slope duality mode: pdual|minus");
    app.add_option("--scale", flags.scale, "SVG pixels per unit (default 80)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    Command cmd{flags, std::nullopt};
    try {
        Result res;
        if (verb == "polygon") {
            res = handle_polygon(subverb, cmd);
        } else if (verb == "newton") {
            res = handle_newton(subverb, cmd);
        } else if (verb == "mu") {
            res = handle_mu(subverb, cmd);
        } else if (verb == "bgmu") {
            res = handle_bgmu(cmd);
        } else if (verb == "strata") {
            res = handle_strata(cmd);
        } else if (verb == "ffgs") {
            res = handle_ffgs(subverb, cmd);
        } else if (verb == "tower") {
            res = handle_tower(subverb, cmd);
        } else if (verb == "hn") {
            res = handle_hn(subverb, cmd);
        } else {
            err << "unknown verb '" << verb << "'\n";
            return 2;
        }

        if (!flags.svg.empty()) {
            res.render.scale = flags.scale;
            std::ofstream svg_file(flags.svg);
            if (!svg_file)
                throw DomainError("IoError", "cannot open SVG output '" + flags.svg + "'");
            svg_file << render_svg(res.render);
        }

        write_output(flags, Json{{"schema", kSchema}, {"result", res.payload}}, out);
        return 0;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        const std::string detail = e.what();
        write_output(flags,
                     Json{{"schema", kSchema},
                          {"error", e.code()},
                          {"detail", detail.substr(detail.find(": ") + 2)}},
                     out);
        return 1;
    }
}

}  // namespace hnpoly
