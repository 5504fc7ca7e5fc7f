#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hnpoly/cli.hpp"
#include "hnpoly/ffgs.hpp"
#include "hnpoly/hodge_newton.hpp"
#include "hnpoly/json_io.hpp"
#include "hnpoly/svg.hpp"

#include <sstream>

namespace py = pybind11;
using namespace hnpoly;

namespace {

long long small_int(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p()) throw py::value_error(std::string(what) + " exceeds 64 bits; use str()");
    return z.get_si();
}

CaseData make_case(const std::string& kind, std::int64_t d, std::int64_t n) {
    return CaseData{case_from_name(kind), d, n};
}

MuData make_mu(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
    return MuData{pairs};
}

std::string dump_json(const json::json& j) { return j.dump(2); }

}  // namespace

PYBIND11_MODULE(_hnpoly, m) {
    m.doc() = "exact rational polygon calculus for Newton/Hodge/Harder-Narasimhan invariants";

    py::register_exception<DomainError>(m, "DomainError");

    py::class_<Rat>(m, "Rat")
        .def(py::init<long long>())
        .def(py::init<long long, long long>())
        .def(py::init([](const std::string& s) { return Rat::parse(s); }))
        .def_property_readonly("num", [](const Rat& r) { return small_int(r.num(), "numerator"); })
        .def_property_readonly("den", [](const Rat& r) { return small_int(r.den(), "denominator"); })
        .def("__str__", &Rat::str)
        .def("__repr__", [](const Rat& r) { return "Rat(" + r.str() + ")"; })
        .def("__float__", &Rat::to_double)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def(py::self <= py::self)
        .def(py::self > py::self)
        .def(py::self >= py::self)
        .def("__hash__", [](const Rat& r) { return py::hash(py::str(r.str())); });
    py::implicitly_convertible<py::int_, Rat>();
    py::implicitly_convertible<py::str, Rat>();

    py::class_<Point>(m, "Point")
        .def(py::init<Rat, Rat>())
        .def_readwrite("x", &Point::x)
        .def_readwrite("y", &Point::y)
        .def(py::self == py::self)
        .def("__repr__",
             [](const Point& p) { return "Point(" + p.x.str() + ", " + p.y.str() + ")"; });

    py::class_<ConcavePolygon>(m, "ConcavePolygon")
        .def_static("from_slopes",
                    [](const std::vector<std::pair<Rat, Rat>>& pairs) {
                        return ConcavePolygon::from_slopes(pairs);
                    })
        .def_static("from_vertices",
                    [](const std::vector<Point>& vs) { return ConcavePolygon::from_vertices(vs); })
        .def_property_readonly("segments",
                               [](const ConcavePolygon& p) {
                                   std::vector<std::pair<Rat, Rat>> out;
                                   for (const auto& s : p.segments())
                                       out.emplace_back(s.slope, s.width);
                                   return out;
                               })
        .def("width", &ConcavePolygon::width)
        .def("end_height", &ConcavePolygon::end_height)
        .def("evaluate", &ConcavePolygon::evaluate)
        .def("vertices", &ConcavePolygon::vertices)
        .def("break_points", &ConcavePolygon::break_points)
        .def("contains", &ConcavePolygon::contains)
        .def("to_json", [](const ConcavePolygon& p) { return dump_json(json::encode(p)); })
        .def(py::self == py::self)
        .def("__repr__", [](const ConcavePolygon& p) {
            std::ostringstream os;
            os << "ConcavePolygon([";
            bool first = true;
            for (const auto& s : p.segments()) {
                if (!first) os << ", ";
                first = false;
                os << "(" << s.slope << ", " << s.width << ")";
            }
            os << "])";
            return os.str();
        });
    m.def("polygon_from_json",
          [](const std::string& text) { return json::decode_polygon(json::json::parse(text)); });

    m.def("leq", &leq, py::arg("p"), py::arg("q"));
    m.def("contact_break_points", &contact_break_points, py::arg("newton"), py::arg("hodge"));
    m.def("normalize", &normalize, py::arg("p"), py::arg("d"));
    m.def("average", [](const std::vector<ConcavePolygon>& ps) { return average(ps); });
    m.def("dual", &dual, py::arg("p"), py::arg("c") = Rat(1));
    m.def("is_symmetric", &is_symmetric, py::arg("p"), py::arg("c") = Rat(1));
    m.def("symmetric_point", &symmetric_point, py::arg("p"), py::arg("x"));
    m.def("split_at", &split_at, py::arg("p"), py::arg("x"));
    m.def("concave_envelope",
          [](const std::vector<Point>& pts, const Point& anchor) {
              return concave_envelope(pts, anchor);
          },
          py::arg("points"), py::arg("anchor_end"));

    py::class_<SlopeMultiset>(m, "SlopeMultiset")
        .def(py::init<std::vector<std::pair<Rat, std::int64_t>>, bool>(), py::arg("entries"),
             py::arg("strict_dm") = true)
        .def_property_readonly("entries", &SlopeMultiset::entries)
        .def_property_readonly("strict_dm", &SlopeMultiset::strict_dm)
        .def("height", &SlopeMultiset::height)
        .def(py::self == py::self);

    py::enum_<DualMode>(m, "DualMode")
        .value("PDual", DualMode::PDual)
        .value("Minus", DualMode::Minus);

    py::class_<FIsocrystal>(m, "FIsocrystal")
        .def(py::init<SlopeMultiset, std::int64_t>(), py::arg("slopes"), py::arg("d") = 1)
        .def_readonly("slopes", &FIsocrystal::slopes)
        .def_readonly("d", &FIsocrystal::d)
        .def("height", &FIsocrystal::height)
        .def("to_json", [](const FIsocrystal& iso) { return dump_json(json::encode(iso)); })
        .def(py::self == py::self);

    m.def("newton_polygon", &newton_polygon);
    m.def("t_N", &t_N);
    m.def("dual_slopes", &dual_slopes, py::arg("slopes"), py::arg("mode") = DualMode::PDual);
    m.def("normalized_newton", &normalized_newton);
    m.def("p_divisible_check", &p_divisible_check);
    m.def("hn_split", &hn_split, py::arg("isocrystal"), py::arg("x"));
    m.def("three_way_split", &three_way_split, py::arg("isocrystal"), py::arg("x"),
          py::arg("xhat"));

    py::class_<NewtonPoint>(m, "NewtonPoint")
        .def_readonly("poly", &NewtonPoint::poly)
        .def_readonly("slopes_raw", &NewtonPoint::slopes_raw)
        .def(py::self == py::self);

    py::class_<StrataEntry>(m, "StrataEntry")
        .def_readonly("newton", &StrataEntry::newton)
        .def_readonly("basic", &StrataEntry::basic)
        .def_readonly("contact_break_points", &StrataEntry::contact_break_points)
        .def_readonly("hn_condition", &StrataEntry::hn_condition)
        .def_readonly("dim", &StrataEntry::dim);

    m.def("validate_mu",
          [](const std::string& kind, std::int64_t d, std::int64_t n,
             const std::vector<std::pair<std::int64_t, std::int64_t>>& mu) {
              const auto v = validate_mu(make_case(kind, d, n), make_mu(mu));
              return std::make_pair(v.ok, v.reasons);
          },
          py::arg("case"), py::arg("d"), py::arg("n"), py::arg("mu"));
    m.def("mu_average",
          [](const std::string& kind, std::int64_t d, std::int64_t n,
             const std::vector<std::pair<std::int64_t, std::int64_t>>& mu) {
              return mu_average(make_case(kind, d, n), make_mu(mu));
          },
          py::arg("case"), py::arg("d"), py::arg("n"), py::arg("mu"));
    m.def("enumerate_B",
          [](const std::string& kind, std::int64_t d, std::int64_t n,
             const std::vector<std::pair<std::int64_t, std::int64_t>>& mu,
             std::int64_t max_denominator) {
              return enumerate_B(make_case(kind, d, n), make_mu(mu), max_denominator);
          },
          py::arg("case"), py::arg("d"), py::arg("n"), py::arg("mu"),
          py::arg("max_denominator") = 0);
    m.def("is_basic", &is_basic, py::arg("b"), py::arg("B"));
    m.def("rz_dimension",
          [](const std::string& kind, std::int64_t d, std::int64_t n,
             const std::vector<std::pair<std::int64_t, std::int64_t>>& mu) {
              return rz_dimension(make_case(kind, d, n), make_mu(mu));
          },
          py::arg("case"), py::arg("d"), py::arg("n"), py::arg("mu"));
    m.def("strata_report",
          [](const std::string& kind, std::int64_t d, std::int64_t n,
             const std::vector<std::pair<std::int64_t, std::int64_t>>& mu,
             std::int64_t max_denominator) {
              return strata_report(make_case(kind, d, n), make_mu(mu), max_denominator);
          },
          py::arg("case"), py::arg("d"), py::arg("n"), py::arg("mu"),
          py::arg("max_denominator") = 0);

    py::class_<FfgsInvariants>(m, "FfgsInvariants")
        .def(py::init<std::int64_t, Rat>(), py::arg("ht"), py::arg("deg"))
        .def_readonly("ht", &FfgsInvariants::ht)
        .def_readonly("deg", &FfgsInvariants::deg)
        .def("slope", &FfgsInvariants::slope);

    py::class_<SubobjectCloud>(m, "SubobjectCloud")
        .def(py::init([](std::int64_t ht, const Rat& deg, const std::vector<Point>& pts) {
                 return SubobjectCloud(FfgsInvariants(ht, deg), pts);
             }),
             py::arg("ht"), py::arg("deg"), py::arg("points"))
        .def_readonly("ambient", &SubobjectCloud::ambient)
        .def_readonly("points", &SubobjectCloud::points)
        .def("to_json", [](const SubobjectCloud& c) { return dump_json(json::encode(c)); })
        .def(py::self == py::self);

    m.def("hn_polygon", &hn_polygon);
    m.def("normalized_hn", &normalized_hn, py::arg("cloud"), py::arg("d"));
    m.def("is_semistable", &is_semistable);
    m.def("mu_max_min", &mu_max_min);
    m.def("hom_vanishes", &hom_vanishes, py::arg("g1"), py::arg("g2"));
    m.def("dual_cloud", &dual_cloud);

    py::class_<OmegaDivisors>(m, "OmegaDivisors")
        .def(py::init<std::int64_t, std::int64_t, std::vector<std::vector<Rat>>>(), py::arg("d"),
             py::arg("ht"), py::arg("per_tau"))
        .def_readonly("d", &OmegaDivisors::d)
        .def_readonly("ht", &OmegaDivisors::ht)
        .def_readonly("per_tau", &OmegaDivisors::per_tau);

    m.def("fitting_hodge", &fitting_hodge);
    m.def("hodge_from_mu_at_p",
          [](const std::string& kind, std::int64_t d, std::int64_t n,
             const std::vector<std::pair<std::int64_t, std::int64_t>>& mu) {
              return hodge_from_mu_at_p(make_case(kind, d, n), make_mu(mu));
          },
          py::arg("case"), py::arg("d"), py::arg("n"), py::arg("mu"));

    py::class_<TorsionTower>(m, "TorsionTower")
        .def(py::init<std::int64_t, std::vector<SubobjectCloud>>(), py::arg("d"),
             py::arg("clouds"))
        .def_readonly("d", &TorsionTower::d)
        .def_readonly("clouds", &TorsionTower::clouds);

    py::class_<TowerViolation>(m, "TowerViolation")
        .def_readonly("i", &TowerViolation::i)
        .def_readonly("m", &TowerViolation::m)
        .def_readonly("x", &TowerViolation::x);

    py::class_<TowerLimit>(m, "TowerLimit")
        .def_readonly("limit", &TowerLimit::limit)
        .def_readonly("violations", &TowerLimit::violations)
        .def_readonly("levels", &TowerLimit::levels);

    m.def("tower_limit", &tower_limit);

    py::class_<ChainVerdict>(m, "ChainVerdict")
        .def_readonly("hn_le_newt", &ChainVerdict::hn_le_newt)
        .def_readonly("newt_le_hdg", &ChainVerdict::newt_le_hdg)
        .def_readonly("witness", &ChainVerdict::witness);

    m.def("chain_check", &chain_check, py::arg("hn"), py::arg("newt"), py::arg("hdg"));

    py::class_<FilteredInvariant>(m, "FilteredInvariant")
        .def(py::init([](const std::string& kind, std::int64_t d, std::int64_t n,
                         const FIsocrystal& newton,
                         const std::vector<std::pair<std::int64_t, std::int64_t>>& mu,
                         std::optional<ConcavePolygon> hn) {
                 return FilteredInvariant(make_case(kind, d, n), newton, make_mu(mu),
                                          std::move(hn));
             }),
             py::arg("case"), py::arg("d"), py::arg("n"), py::arg("newton"), py::arg("mu"),
             py::arg("hn") = std::nullopt)
        .def_static("from_jumps",
                    [](const std::string& kind, std::int64_t d, std::int64_t n,
                       const FIsocrystal& newton, std::vector<std::vector<std::int64_t>> jumps,
                       std::optional<ConcavePolygon> hn) {
                        return FilteredInvariant(make_case(kind, d, n), newton, std::move(jumps),
                                                 std::move(hn));
                    },
                    py::arg("case"), py::arg("d"), py::arg("n"), py::arg("newton"),
                    py::arg("jumps"), py::arg("hn") = std::nullopt)
        .def_property_readonly("newton", &FilteredInvariant::newton)
        .def_property_readonly("jumps", &FilteredInvariant::jumps)
        .def_property_readonly("hn", [](const FilteredInvariant& inv) { return inv.hn(); })
        .def_property_readonly("mu",
                               [](const FilteredInvariant& inv)
                                   -> std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> {
                                   if (const auto mu = inv.mu()) return mu->pairs;
                                   return std::nullopt;
                               })
        .def("minuscule", &FilteredInvariant::minuscule)
        .def("newton_poly", &FilteredInvariant::newton_poly)
        .def("hodge_poly", &FilteredInvariant::hodge_poly)
        .def("to_json", [](const FilteredInvariant& inv) { return dump_json(json::encode(inv)); })
        .def(py::self == py::self);
    m.def("invariant_from_json", [](const std::string& text) {
        return json::decode_invariant(json::json::parse(text));
    });

    m.def("t_H", &t_H);
    m.def("t_H_normalized", &t_H_normalized);
    m.def("admissible_check", &admissible_check);
    m.def("detect_hn", &detect_hn);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("ok", &CheckResult::ok)
        .def_readonly("applicable", &CheckResult::applicable)
        .def_readonly("witness", &CheckResult::witness);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("newton_split", &VerificationReport::newton_split)
        .def_readonly("hodge_split", &VerificationReport::hodge_split)
        .def_readonly("hn_contacts", &VerificationReport::hn_contacts)
        .def_readonly("pel_duality", &VerificationReport::pel_duality)
        .def_readonly("pieces_admissible", &VerificationReport::pieces_admissible)
        .def("all_ok", &VerificationReport::all_ok);

    py::class_<HNDecomposition>(m, "HNDecomposition")
        .def_readonly("x", &HNDecomposition::x)
        .def_readonly("xhat", &HNDecomposition::xhat)
        .def_readonly("pieces", &HNDecomposition::pieces)
        .def_readonly("verdicts", &HNDecomposition::verdicts)
        .def("to_json", [](const HNDecomposition& dec) { return dump_json(json::encode(dec)); });

    m.def("decompose", &decompose, py::arg("invariant"), py::arg("x"), py::arg("xhat"));
    m.def("verify", &verify, py::arg("decomposition"), py::arg("parent"));
    m.def("hn_passes_contacts", &hn_passes_contacts, py::arg("hn"), py::arg("x"), py::arg("xhat"));

    m.def("render_svg",
          [](const std::vector<std::pair<ConcavePolygon, std::string>>& polygons,
             const std::vector<std::pair<Point, std::string>>& marks, double scale) {
              SvgRender render;
              render.scale = scale;
              for (const auto& [poly, label] : polygons) render.polygons.push_back({poly, label, ""});
              for (const auto& [at, label] : marks) render.marks.push_back({at, label});
              return render_svg(render);
          },
          py::arg("polygons"), py::arg("marks") = std::vector<std::pair<Point, std::string>>{},
          py::arg("scale") = 80.0);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return std::make_tuple(code, out.str(), err.str());
    });
}
