#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hadamard/corpus.hpp"
#include "hadamard/diagnostics.hpp"
#include "hadamard/error.hpp"
#include "hadamard/means.hpp"
#include "hadamard/space.hpp"

namespace py = pybind11;
using namespace hadamard;

namespace {

// Python point forms: a float sequence (euclidean), (x, y) (half-plane),
// (ray, r) (star tree).
Point to_point(const Space& space, const py::handle& obj) {
  Point p;
  if (space.is_euclidean()) {
    p = EuclideanPoint{obj.cast<std::vector<double>>()};
  } else if (space.is_half_plane()) {
    const auto [x, y] = obj.cast<std::pair<double, double>>();
    p = HalfPlanePoint{x, y};
  } else {
    const auto [ray, r] = obj.cast<std::pair<int, double>>();
    p = tree_point(ray, r);
  }
  validate(space, p);
  return p;
}

py::object from_point(const Point& p) {
  if (const auto* e = std::get_if<EuclideanPoint>(&p)) return py::cast(e->coords);
  if (const auto* h = std::get_if<HalfPlanePoint>(&p)) return py::make_tuple(h->x, h->y);
  const auto& t = std::get<TreePoint>(p);
  return py::make_tuple(t.ray, t.radius);
}

std::vector<Point> to_points(const Space& space, const py::iterable& objs) {
  std::vector<Point> out;
  for (const auto& o : objs) out.push_back(to_point(space, o));
  return out;
}

py::list from_points(const std::vector<Point>& points) {
  py::list out;
  for (const auto& p : points) out.append(from_point(p));
  return out;
}

SolverConfig solver(double tol, int max_passes, bool cyclic) {
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_passes = max_passes;
  cfg.algorithm = cyclic ? MeanAlgorithm::cyclic : MeanAlgorithm::automatic;
  return cfg;
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["holds"] = v.holds;
  d["statistic"] = v.statistic;
  d["threshold"] = v.threshold;
  d["horizon"] = v.horizon;
  d["basis"] = v.basis;
  d["text"] = describe(v);
  return d;
}

py::dict profile_dict(const ProfileVerdict& pv) {
  py::dict d = verdict_dict(pv.verdict);
  d["index"] = pv.profile.index;
  d["value"] = pv.profile.value;
  return d;
}

py::dict mean_dict(const MeanResult& r) {
  py::dict d;
  d["sigma"] = from_point(r.sigma);
  d["objective"] = r.objective;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["k"] = r.window.k;
  d["n"] = r.window.n;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Geodesic means and convergence diagnostics in Hadamard spaces";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<GeometryError>(m, "GeometryError", error);
  py::register_exception<WindowError>(m, "WindowError", error);
  py::register_exception<HorizonError>(m, "HorizonError", error);
  py::register_exception<ParseError>(m, "ParseError", error);

  py::class_<Space>(m, "Space")
      .def_static("euclidean", &Space::euclidean, py::arg("dim"))
      .def_static("half_plane", &Space::half_plane)
      .def_static("star_tree", &Space::star_tree, py::arg("rays"))
      .def_property_readonly("name", &Space::name)
      .def("origin", [](const Space& s) { return from_point(origin(s)); })
      .def("to_json", [](const Space& s) { return serialize(s); })
      .def_static("from_json", &parse_space)
      .def("__eq__", [](const Space& a, const Space& b) { return a == b; })
      .def("__repr__", [](const Space& s) { return "Space." + s.name(); });

  m.def("distance", [](const Space& s, py::handle a, py::handle b) {
    return distance(s, to_point(s, a), to_point(s, b));
  });
  m.def("combine", [](const Space& s, py::handle a, py::handle b, double t) {
    return from_point(combine(s, to_point(s, a), to_point(s, b), t));
  });
  m.def("midpoint", [](const Space& s, py::handle a, py::handle b) {
    return from_point(midpoint(s, to_point(s, a), to_point(s, b)));
  });
  m.def("quasilin", [](const Space& s, py::handle a, py::handle b, py::handle c, py::handle d) {
    return quasilin(s, to_point(s, a), to_point(s, b), to_point(s, c), to_point(s, d));
  });

  py::class_<Seq>(m, "Sequence")
      .def(py::init([](const Space& s, const py::iterable& points, const std::string& label) {
             Seq seq{s, to_points(s, points), label};
             validate(seq);
             return seq;
           }),
           py::arg("space"), py::arg("points"), py::arg("label") = "")
      .def_readonly("space", &Seq::space)
      .def_readonly("label", &Seq::label)
      .def_property_readonly("points", [](const Seq& s) { return from_points(s.points); })
      .def("__len__", &Seq::size)
      .def("__getitem__", [](const Seq& s, std::size_t i) {
        if (i >= s.size()) throw py::index_error();
        return from_point(s.points[i]);
      })
      .def("to_json", [](const Seq& s) { return serialize(s); })
      .def_static("from_json", &parse_sequence);

  m.def("generate", [](const std::string& spec_json) { return generate(parse_spec(spec_json)); },
        py::arg("spec_json"));
  m.def("reference_corpus", [] {
    std::vector<std::string> out;
    for (const auto& s : reference_corpus()) out.push_back(serialize(s));
    return out;
  });

  m.def(
      "karcher_mean",
      [](const Seq& seq, std::size_t k, std::optional<std::size_t> n, double tol, int max_passes, bool cyclic) {
        return mean_dict(karcher_mean(seq, {k, n.value_or(seq.size() - std::min(k, seq.size()))},
                                      solver(tol, max_passes, cyclic)));
      },
      py::arg("seq"), py::arg("k") = 0, py::arg("n") = py::none(), py::arg("tol") = 1e-10,
      py::arg("max_passes") = 10000, py::arg("cyclic") = false);

  m.def(
      "vp_table",
      [](const Seq& seq, const std::vector<std::size_t>& n_grid, const std::vector<std::size_t>& k_grid) {
        const auto table = vp_table(seq, n_grid, k_grid);
        py::dict out;
        for (const auto& [key, r] : table.entries) out[py::make_tuple(key.first, key.second)] = mean_dict(r);
        return out;
      },
      py::arg("seq"), py::arg("n_grid"), py::arg("k_grid"));

  m.def(
      "limit_candidate", [](const Seq& seq) { return from_point(limit_candidate(seq)); }, py::arg("seq"));

  m.def(
      "asymptotic_center",
      [](const Seq& seq, std::optional<std::size_t> tail_start) {
        const auto r = asymptotic_center(seq, tail_start.value_or(seq.size() / 2));
        return py::make_tuple(from_point(r.center), r.radius);
      },
      py::arg("seq"), py::arg("tail_start") = py::none());

  m.def(
      "almost_periodicity",
      [](const Seq& seq, double eps, std::size_t L_max, std::size_t N_max, std::size_t max_shift) {
        const auto r = almost_periodicity_detect(seq, eps, L_max, N_max, max_shift);
        py::dict d = verdict_dict(r.verdict);
        d["L"] = r.L;
        d["N"] = r.N;
        d["witnesses"] = r.witnesses;
        return d;
      },
      py::arg("seq"), py::arg("eps"), py::arg("L_max") = 64, py::arg("N_max") = 0, py::arg("max_shift") = 0);

  m.def("abel_identity_check", [](const std::vector<double>& a) { return abel_identity_check(a); });

  m.def(
      "classify",
      [](const Seq& seq, double tol, std::optional<std::size_t> tail_start) {
        ClassifyConfig cfg;
        cfg.tol = tol;
        cfg.tail_start = tail_start;
        const auto r = classify(seq, cfg);
        py::dict d;
        d["label"] = r.label;
        d["horizon"] = r.horizon;
        d["limit"] = from_point(r.limit);
        d["tail_start"] = r.tail_start;
        d["converges"] = verdict_dict(r.converges);
        d["asymptotically_regular"] = profile_dict(r.asymptotically_regular);
        d["almost_convergent"] = profile_dict(r.almost_convergent);
        d["mean_convergent"] = profile_dict(r.mean_convergent);
        d["tauberian"] = profile_dict(r.tauberian);
        d["nd_step"] = profile_dict(r.nd_step);
        d["delta_convergent"] = verdict_dict(r.delta_convergent.verdict);
        d["almost_periodic"] = verdict_dict(r.almost_periodic.verdict);
        d["inconsistencies"] = r.inconsistencies;
        d["report"] = render(r);
        return d;
      },
      py::arg("seq"), py::arg("tol") = 1e-3, py::arg("tail_start") = py::none());
}
