#include "tongues/circle_map.hpp"
#include "tongues/cli.hpp"
#include "tongues/errors.hpp"
#include "tongues/perturb.hpp"
#include "tongues/pinch.hpp"
#include "tongues/report.hpp"
#include "tongues/tongue_scan.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace tongues;

// Rational <-> fractions.Fraction; str and int accepted on the way in.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
    PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (!src) return false;
        try {
            if (py::isinstance<py::str>(src)) {
                value = Rational::parse(src.cast<std::string>());
                return true;
            }
            if (py::isinstance<py::bool_>(src)) return false;
            if (py::isinstance<py::int_>(src) || py::hasattr(src, "numerator")) {
                const std::string num = py::str(src.attr("numerator"));
                const std::string den = py::str(src.attr("denominator"));
                value = Rational::parse(num + "/" + den);
                return true;
            }
        } catch (const Error&) {
            return false;
        }
        return false;
    }

    static handle cast(const Rational& r, return_value_policy, handle) {
        const py::object fraction = py::module_::import("fractions").attr("Fraction");
        return fraction(r.str()).release();
    }
};
}  // namespace pybind11::detail

namespace {

py::object from_json(const nlohmann::ordered_json& j) {
    const py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

py::tuple interval(const RationalInterval& r) { return py::make_tuple(r.lo(), r.hi()); }

py::dict record_dict(const TongueRecord& r) {
    py::dict d;
    d["p"] = r.p;
    d["q"] = r.q;
    d["b"] = r.b;
    d["omega_left"] = r.omega_left ? py::object(interval(*r.omega_left)) : py::none();
    d["omega_right"] = r.omega_right ? py::object(interval(*r.omega_right)) : py::none();
    d["width_lb"] = r.width_lower_bound();
    return d;
}

std::vector<TongueRecord> records_from(const py::list& rows) {
    std::vector<TongueRecord> out;
    for (const auto& item : rows) {
        const auto d = item.cast<py::dict>();
        TongueRecord r;
        r.p = d["p"].cast<long>();
        r.q = d["q"].cast<unsigned>();
        r.b = d["b"].cast<Rational>();
        if (!d["omega_left"].is_none()) {
            const auto t = d["omega_left"].cast<py::tuple>();
            r.omega_left = RationalInterval(t[0].cast<Rational>(), t[1].cast<Rational>());
        }
        if (!d["omega_right"].is_none()) {
            const auto t = d["omega_right"].cast<py::tuple>();
            r.omega_right = RationalInterval(t[0].cast<Rational>(), t[1].cast<Rational>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

ReducedPLForcing pl_forcing(const std::string& spec) {
    const Forcing f = parse_forcing(spec);
    if (const auto* pl = std::get_if<ReducedPLForcing>(&f)) return *pl;
    throw ParseError("a PL forcing is required, got '" + spec + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Arnold tongues and pinch points of PL circle-map families";

    static py::exception<Error> error(m, "TonguesError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(error.ptr(), (e.kind() + ": " + e.what()).c_str());
        }
    });

    m.def("pinch_count", &pinch_count, py::arg("q"), py::arg("w"));

    m.def(
        "pinch_b",
        [](unsigned q, unsigned j, const Rational& w) {
            const auto c = pinch_b(q, j, w);
            py::dict d;
            d["exact"] = c.exact ? py::cast(*c.exact) : py::none();
            d["interval"] = interval(c.interval);
            d["polynomial"] = from_json(to_json(c.polynomial));
            return d;
        },
        py::arg("q"), py::arg("j"), py::arg("w"));

    m.def(
        "pinch_omega", [](long p, unsigned q, unsigned j, const Rational& w) { return interval(pinch_omega(p, q, j, w)); },
        py::arg("p"), py::arg("q"), py::arg("j"), py::arg("w"));

    m.def(
        "enumerate_pinches",
        [](const Rational& w, unsigned q_max) {
            py::list out;
            for (const auto& pt : enumerate_pinches(w, q_max)) out.append(from_json(to_json(pt)));
            return out;
        },
        py::arg("w"), py::arg("q_max"), "Certified pinches of every p/q tongue, 2 <= q <= q_max.");

    m.def(
        "verify_pinch",
        [](const std::string& forcing, const Rational& b, const Rational& omega, long p, unsigned q) {
            return std::string(to_string(verify_pinch(pl_forcing(forcing), b, omega, p, q).kind));
        },
        py::arg("forcing"), py::arg("b"), py::arg("omega"), py::arg("p"), py::arg("q"));

    m.def(
        "exact_boundaries",
        [](const std::string& forcing, const Rational& b, long p, unsigned q) {
            const auto f = pl_forcing(forcing);
            return py::make_tuple(exact_left_boundary(f, b, p, q), exact_right_boundary(f, b, p, q));
        },
        py::arg("forcing"), py::arg("b"), py::arg("p"), py::arg("q"));

    m.def(
        "scan",
        [](const std::string& forcing, unsigned q_max, const std::vector<Rational>& b_values, const Rational& tol) {
            const Forcing f = parse_forcing(forcing);
            std::vector<TongueRecord> recs;
            {
                py::gil_scoped_release release;
                recs = scan_tongues(f, q_max, b_values, tol);
            }
            py::list out;
            for (const auto& r : recs) out.append(record_dict(r));
            return out;
        },
        py::arg("forcing"), py::arg("q_max"), py::arg("b_values"), py::arg("tol") = default_tolerance());

    m.def("write_csv", [](const py::list& rows) { return write_csv(records_from(rows)); }, py::arg("records"));
    m.def(
        "parse_csv",
        [](const std::string& text) {
            py::list out;
            for (const auto& r : parse_csv(text)) out.append(record_dict(r));
            return out;
        },
        py::arg("text"));
    m.def("render_svg", [](const py::list& rows) { return render_svg(records_from(rows)); }, py::arg("records"));

    m.def(
        "conjugacy",
        [](const std::string& forcing, const Rational& b, const Rational& omega, long p, unsigned q) {
            const auto f = pl_forcing(forcing);
            verify_pinch(f, b, omega, p, q);
            const PLMap g = pl_from_family(b, omega, f);
            const PLMap h = build_conjugacy(g, p, q);
            py::dict d;
            d["map"] = from_json(to_json(g));
            d["conjugacy"] = from_json(to_json(h));
            d["density"] = from_json(to_json(invariant_density(g, h)));
            return d;
        },
        py::arg("forcing"), py::arg("b"), py::arg("omega"), py::arg("p"), py::arg("q"));

    m.def(
        "separate_roots",
        [](const std::vector<Rational>& w, const std::vector<Rational>& ell, unsigned q, unsigned n,
           const Rational& epsilon, std::uint64_t seed) {
            const auto s = separate_roots(w, ell, q, n, epsilon, seed);
            return py::make_tuple(s.w, s.ell, s.attempts);
        },
        py::arg("w"), py::arg("ell"), py::arg("q"), py::arg("n"), py::arg("epsilon"), py::arg("seed") = 1);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"tongues"};
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line in-process; returns (exit code, stdout, stderr).");
}
