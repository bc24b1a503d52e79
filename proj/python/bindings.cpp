#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "emiqp/generators.hpp"
#include "emiqp/trust_region.hpp"

namespace py = pybind11;
using namespace emiqp;

namespace {

Rational to_rational(const py::handle& obj) {
    if (py::isinstance<py::float_>(obj)) throw py::type_error("floats are not accepted; use Fraction, int or str");
    if (py::isinstance<py::str>(obj)) return parse_rational(obj.cast<std::string>());
    return parse_rational(py::str(obj).cast<std::string>());
}

py::object to_fraction(const Rational& q) {
    return py::module_::import("fractions").attr("Fraction")(to_string(q));
}

RVector to_vector(const py::sequence& seq) {
    RVector v;
    for (const auto& item : seq) v.push_back(to_rational(item));
    return v;
}

RMatrix to_matrix(const py::sequence& rows) {
    std::vector<RVector> rs;
    for (const auto& r : rows) rs.push_back(to_vector(r.cast<py::sequence>()));
    std::size_t cols = rs.empty() ? 0 : rs[0].size();
    for (const auto& r : rs)
        if (r.size() != cols) throw InvalidArgument("ragged matrix");
    return RMatrix::from_rows(rs, cols);
}

py::list from_vector(const RVector& v) {
    py::list out;
    for (const auto& x : v) out.append(to_fraction(x));
    return out;
}

py::dict interval(const Interval& iv) {
    py::dict d;
    d["lo"] = to_fraction(iv.lo);
    d["hi"] = to_fraction(iv.hi);
    return d;
}

py::dict outcome(const SolveOutcome& out) {
    py::dict d;
    bool solved = out.status == SolveStatus::ApproxSolution;
    d["status"] = solved ? "solved" : "infeasible";
    d["x"] = solved ? py::object(from_vector(out.x)) : py::object(py::none());
    d["value"] = solved ? to_fraction(out.value) : py::object(py::none());
    d["eps"] = to_fraction(out.eps);
    d["depth"] = out.stats.depth;
    d["nodes"] = out.stats.nodes;
    d["hyperplanes"] = out.stats.hyperplanesPerLevel;
    return d;
}

py::dict bounds(const OracleBounds& b) {
    py::dict d;
    d["feasible"] = b.feasible;
    d["fibers"] = b.fibers;
    if (b.feasible) {
        d["f_inf"] = interval(b.fInf);
        d["f_sup"] = interval(b.fSup);
        d["argmin"] = from_vector(b.witnessMin);
        d["argmax"] = from_vector(b.witnessMax);
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_emiqp, m) {
    m.doc() = "Exact approximation algorithms for mixed integer quadratic programs";

    m.def(
        "sqrt_bounds",
        [](const py::handle& alpha, long k) {
            auto [l, u] = sqrt_bounds(to_rational(alpha), k);
            return py::make_tuple(to_fraction(l), to_fraction(u));
        },
        py::arg("alpha"), py::arg("k"));

    m.def(
        "tr_minimize",
        [](const py::sequence& H, const py::sequence& h, long k) {
            TrResult r = tr_minimize(to_matrix(H), to_vector(h), k);
            py::dict d;
            d["point"] = from_vector(r.point);
            d["lower"] = to_fraction(r.valueBounds.lo);
            d["upper"] = to_fraction(r.valueBounds.hi);
            return d;
        },
        py::arg("H"), py::arg("h"), py::arg("k"));

    m.def("weak_epsilon", [](std::size_t n) { return to_fraction(weak_epsilon(n)); }, py::arg("n"));

    m.def(
        "normalize",
        [](const std::string& text) { return serialize(parse_instance(text)); }, py::arg("text"));

    m.def(
        "solve",
        [](const std::string& text, const py::object& eps, long psi) {
            InstanceFile f = parse_instance(text);
            if (eps.is_none() && !f.is_polytope()) throw InvalidArgument("eps is required for this instance");
            Rational e = eps.is_none() ? Rational(1) : to_rational(eps);
            SolveOutcome out;
            {
                py::gil_scoped_release release;
                out = solve_file(f, e, psi);
            }
            return outcome(out);
        },
        py::arg("text"), py::arg("eps") = py::none(), py::arg("psi") = 62);

    m.def(
        "oracle",
        [](const std::string& text, long bits) {
            InstanceFile f = parse_instance(text);
            OracleBounds b;
            {
                py::gil_scoped_release release;
                b = oracle_file(f, bits);
            }
            return bounds(b);
        },
        py::arg("text"), py::arg("bits") = 40);

    m.def(
        "verify",
        [](const std::string& text, const py::sequence& point, const py::handle& eps, long bits,
           const py::handle& slack) {
            InstanceFile f = parse_instance(text);
            RVector x = to_vector(point);
            if (x.size() != f.dim()) throw InvalidArgument("point has the wrong dimension");
            Rational e = to_rational(eps);
            OracleBounds b = oracle_file(f, bits);
            VerifyReport r = verify_approx(f.objective, f.feasible(x), x, e, b, to_rational(slack));
            py::dict d;
            d["pass"] = r.pass;
            d["feasible"] = r.feasible;
            d["value"] = r.feasible ? to_fraction(f.objective(x)) : py::object(py::none());
            d["margin"] = to_fraction(r.margin);
            d["reason"] = r.reason;
            return d;
        },
        py::arg("text"), py::arg("point"), py::arg("eps"), py::arg("bits") = 40, py::arg("slack") = 0);

    m.def(
        "gen_maxcut",
        [](std::size_t vertices, const std::vector<std::tuple<std::size_t, std::size_t, long>>& edges) {
            Graph g{vertices, {}};
            for (const auto& [u, v, w] : edges) g.edges.push_back({u, v, w});
            MaxCutInstance mc = gen_maxcut(g);
            InstanceFile f = make_file(mc.mitr);
            f.meta["generator"] = "maxcut";
            f.meta["offset"] = to_string(mc.offset);
            return py::make_tuple(serialize(f), to_fraction(mc.offset));
        },
        py::arg("vertices"), py::arg("edges"));

    m.def("brute_force_max_cut",
          [](std::size_t vertices, const std::vector<std::tuple<std::size_t, std::size_t, long>>& edges) {
              Graph g{vertices, {}};
              for (const auto& [u, v, w] : edges) g.edges.push_back({u, v, w});
              g.validate();
              return brute_force_max_cut(g);
          });

    m.def(
        "gen_cvp",
        [](const py::sequence& basis, const py::sequence& target, const py::handle& radius) {
            std::vector<RVector> b;
            for (const auto& row : basis) b.push_back(to_vector(row.cast<py::sequence>()));
            CvpInstance c = gen_cvp(b, to_vector(target), to_rational(radius));
            InstanceFile f = make_file(c.mitr);
            f.meta["generator"] = "cvp";
            return serialize(f);
        },
        py::arg("basis"), py::arg("target"), py::arg("radius"));

    m.def(
        "gen_random",
        [](const std::string& kind, std::uint64_t seed, std::size_t n, std::size_t p, long range) {
            RandomSpec spec{seed, n, p, range};
            InstanceFile f;
            if (kind == "emiqp") f = make_file(gen_random_emiqp(spec));
            else if (kind == "miqp") f = make_file(gen_random_miqp(spec));
            else throw InvalidArgument("kind must be emiqp or miqp");
            f.meta["generator"] = "random-" + kind;
            f.meta["seed"] = std::to_string(seed);
            return serialize(f);
        },
        py::arg("kind"), py::arg("seed"), py::arg("n"), py::arg("p"), py::arg("range") = 5);
}
