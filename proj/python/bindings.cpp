#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alphatag/cutoffs.hpp"
#include "alphatag/document.hpp"
#include "alphatag/game.hpp"
#include "alphatag/service.hpp"

namespace py = pybind11;
namespace at = alphatag;

namespace {

// Exact inputs only: str ("7/2", "3.5"), int or fractions.Fraction.
at::Rational to_rational(const py::object& obj) {
  if (py::isinstance<py::float_>(obj)) throw py::type_error("floats are not exact; pass a str, int or Fraction");
  return at::parse_rational(py::str(obj).cast<std::string>());
}

at::Rational to_alpha(const py::object& obj) {
  at::Rational a = to_rational(obj);
  if (a < at::Rational(1)) throw py::value_error("alpha must be >= 1, got " + a.str());
  return a;
}

at::Natural to_natural(const py::object& obj) {
  if (!py::isinstance<py::int_>(obj) && !py::isinstance<py::str>(obj)) throw py::type_error("expected a nonnegative int");
  return at::Natural::parse(py::str(obj).cast<std::string>());
}

py::int_ to_py(const at::Natural& n) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(n.str().c_str(), nullptr, 10));
}

py::object to_py(const at::Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::reinterpret_steal<py::int_>(PyLong_FromString(q.num().get_str().c_str(), nullptr, 10)),
                  py::reinterpret_steal<py::int_>(PyLong_FromString(q.den().get_str().c_str(), nullptr, 10)));
}

template <class Range>
py::list to_py_list(const Range& values) {
  py::list out;
  for (const auto& v : values) out.append(to_py(v));
  return out;
}

at::GameState state_of(const at::Rational& alpha, const py::object& pile, const py::object& cap) {
  auto st = at::initial_state(alpha, to_natural(pile));
  if (!cap.is_none()) st.cap = to_natural(cap);
  return st;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact alpha-TAG computations";
  m.attr("__version__") = at::kToolVersion;

  py::register_exception<at::CutoffError>(m, "CutoffError", PyExc_RuntimeError);

  m.def(
      "generate",
      [](const py::object& alpha, const py::object& count, const py::object& max_value) {
        if (count.is_none() == max_value.is_none()) throw py::value_error("pass exactly one of count or max_value");
        auto h = count.is_none() ? at::Horizon::up_to(to_natural(max_value))
                                 : at::Horizon::terms(count.cast<std::size_t>());
        auto seq = at::generate(to_alpha(alpha), h);
        return to_py_list(seq.within_horizon());
      },
      py::arg("alpha"), py::arg("count") = py::none(), py::arg("max_value") = py::none(),
      "Losing pile sizes of alpha-TAG, by term count or by largest value.");

  m.def(
      "window",
      [](const py::object& alpha, std::size_t index) {
        at::PSequence seq(to_alpha(alpha));
        auto w = at::window(seq, index);
        std::vector<at::Natural> members;
        for (auto j : w.member_indices()) members.push_back(seq[j]);
        return to_py_list(members);
      },
      py::arg("alpha"), py::arg("index"), "Members of the window of P_index.");

  m.def(
      "zeckendorf",
      [](const py::object& alpha, const py::object& n) {
        at::PSequence seq(to_alpha(alpha));
        return to_py_list(at::zeckendorf(seq, to_natural(n)).parts(seq));
      },
      py::arg("alpha"), py::arg("n"), "Greedy representation of n, smallest part first.");

  m.def(
      "s_sequence",
      [](const py::object& alpha, std::size_t count) {
        at::PSequence seq(to_alpha(alpha));
        return at::s_sequence(seq, count).values;
      },
      py::arg("alpha"), py::arg("count"));

  m.def(
      "detect_recurrence",
      [](const py::object& alpha) {
        at::PSequence seq(to_alpha(alpha));
        auto rec = at::detect_recurrence(seq);
        py::dict d;
        d["degree"] = rec.degree;
        d["holds_from"] = rec.holds_from;
        d["certified"] = rec.certified;
        d["prefix"] = to_py_list(at::recurrence_prefix(seq, rec));
        return d;
      },
      py::arg("alpha"));

  m.def(
      "degree_bounds", [](const py::object& alpha) { return at::degree_bounds(to_alpha(alpha)); }, py::arg("alpha"));

  m.def(
      "dominant_root",
      [](int k) {
        auto r = at::dominant_root(k);
        py::dict d;
        d["degree"] = r.degree;
        d["dominant_root"] = r.dominant_root;
        d["q_limit"] = r.q_limit;
        d["residual"] = r.residual;
        return d;
      },
      py::arg("k"));

  m.def(
      "classify",
      [](const py::object& alpha, const py::object& pile, const py::object& cap) {
        at::Solver solver(to_alpha(alpha));
        return std::string(at::to_string(solver.classify(state_of(solver.alpha(), pile, cap))));
      },
      py::arg("alpha"), py::arg("pile"), py::arg("cap") = py::none(),
      "'N' or 'P'. The cap defaults to pile - 1, the opening position.");

  m.def(
      "best_move",
      [](const py::object& alpha, const py::object& pile, const py::object& cap) {
        at::Solver solver(to_alpha(alpha));
        auto a = solver.best_move(state_of(solver.alpha(), pile, cap));
        py::dict d;
        d["take"] = to_py(a.take);
        d["winning"] = a.winning;
        d["theory_derived"] = a.theory_derived;
        return d;
      },
      py::arg("alpha"), py::arg("pile"), py::arg("cap") = py::none());

  m.def(
      "losing_piles",
      [](const py::object& alpha, std::size_t max_n) {
        return to_py_list(at::losing_piles_by_oracle(to_alpha(alpha), max_n));
      },
      py::arg("alpha"), py::arg("max_n"), "Opening piles classified P by exhaustive search.");

  m.def(
      "q_sequence",
      [](const py::object& alpha, std::size_t count) {
        py::list out;
        for (const auto& r : at::q_sequence(to_alpha(alpha), count)) out.append(to_py(r.q));
        return out;
      },
      py::arg("alpha"), py::arg("count"));

  m.def(
      "next_cutoff", [](const py::object& alpha) { return to_py(at::next_cutoff(to_alpha(alpha))); },
      py::arg("alpha"));

  m.def(
      "stable_interval",
      [](const py::object& alpha) {
        auto si = at::stable_interval(to_alpha(alpha));
        py::dict d;
        d["lower"] = to_py(si.lower);
        d["upper"] = to_py(si.upper);
        d["degree"] = si.degree;
        d["prefix"] = to_py_list(si.prefix);
        return d;
      },
      py::arg("alpha"));

  m.def(
      "enumerate_cutoffs",
      [](const py::object& lo, const py::object& hi) {
        auto from = to_rational(lo);
        auto to = to_rational(hi);
        at::CutoffCensus c;
        {
          py::gil_scoped_release release;
          c = at::enumerate_cutoffs(from, to);
        }
        return to_py_list(c.cutoffs);
      },
      py::arg("lo"), py::arg("hi"), "Cutoffs c with lo <= c <= hi.");

  m.def(
      "gamma",
      [](const py::object& n) {
        auto bound = to_rational(n);
        py::gil_scoped_release release;
        auto census = at::enumerate_cutoffs(at::Rational(1), std::max(bound, at::Rational(2)));
        return at::gamma_at(census.cutoffs, bound);
      },
      py::arg("n"), "Number of cutoffs <= n.");

  m.def(
      "half_integer_survey",
      [](const py::object& limit) {
        py::list out;
        for (const auto& h : at::half_integer_survey(to_rational(limit))) out.append(py::make_tuple(to_py(h.value), h.is_cutoff));
        return out;
      },
      py::arg("limit"));

  py::class_<at::GameService>(m, "GameService", "In-process version of the serve JSON API.")
      .def(py::init<>())
      .def(
          "handle",
          [](at::GameService& s, const std::string& method, const std::string& path,
             const std::map<std::string, std::string>& query, const std::string& body) {
            auto r = s.handle(method, path, query, body);
            return py::make_tuple(r.status, r.body.dump());
          },
          py::arg("method"), py::arg("path"), py::arg("query") = std::map<std::string, std::string>{},
          py::arg("body") = "", "Returns (status, json text).")
      .def_property_readonly("session_count", &at::GameService::session_count);
}
