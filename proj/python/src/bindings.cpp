// Python bindings. Reports cross the boundary as JSON text; the Python
// package decodes them.
#include "leray/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace leray;

namespace {

class Problem {
 public:
  Problem(const std::string& matroid_json, const std::string& building_set) {
    json j;
    try {
      j = json::parse(matroid_json);
    } catch (const json::exception& e) {
      throw InputError(std::string("malformed matroid JSON: ") + e.what());
    }
    f_ = make_fixture("input", matroid_from_json(j));
    if (!building_set.empty() && building_set != "minimal") f_.G = parse_building_set(*f_.L, building_set);
  }
  static Problem fixture(const std::string& name, const std::string& building_set) {
    Problem p;
    try {
      p.f_ = named_fixture(name);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    if (!building_set.empty() && building_set != "minimal") p.f_.G = parse_building_set(*p.f_.L, building_set);
    return p;
  }

  std::string matroid() const { return matroid_to_json(f_.matroid).dump(); }
  std::string lattice() const { return lattice_report(*f_.L).dump(); }
  std::vector<std::string> building_set() const {
    std::vector<std::string> out;
    for (int g : f_.G.members) out.push_back(f_.L->order.label(g));
    return out;
  }
  std::vector<std::vector<std::string>> cores() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : all_cores(*f_.L, f_.G)) {
      std::vector<std::string> names;
      for (int x : c) names.push_back(f_.L->order.label(x));
      out.push_back(names);
    }
    return out;
  }
  std::string blowup(const std::string& core) const { return blowup_report(*make(core)).dump(); }
  std::string os(const std::string& core) const {
    auto ids = parse_core(*f_.L, f_.G, core);
    if (ids.empty()) return os_report(OSAlgebra(*f_.L)).dump();
    return os_report(OSAlgebra(make(core)->lat)).dump();
  }
  std::string dp(const std::string& core) const { return dp_report(DPAlgebra(make(core))).dump(); }
  std::string model(const std::string& core, bool hat, bool with_cohomology, int threads) const {
    py::gil_scoped_release release;
    LerayModel m(make(core), hat);
    std::vector<std::vector<int>> coh;
    if (with_cohomology) coh = m.cohomology(threads);
    Suite s;
    s.add("d squared is zero", m.d_squared_zero());
    return model_report(m, coh, s).dump();
  }
  std::string verify(const std::string& core, int threads, long max_poset_size) const {
    py::gil_scoped_release release;
    VerifyOptions o;
    o.threads = threads;
    o.max_poset_size = max_poset_size;
    auto ids = parse_core(*f_.L, f_.G, core);
    make(core);
    return suite_report(verify_all(f_, ids, o)).dump();
  }

 private:
  Problem() = default;
  std::shared_ptr<const PartialBlowup> make(const std::string& core) const {
    auto ids = parse_core(*f_.L, f_.G, core);
    try {
      return build_semilattice(partial(f_, ids));
    } catch (const BlowupError& e) {
      throw InputError(e.what());
    }
  }
  Fixture f_;
};

}  // namespace

PYBIND11_MODULE(_leray, m) {
  m.doc() = "Blowups of geometric lattices, OS and Chow rings, and the bigraded Leray model";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<Problem>(m, "Problem")
      .def(py::init<const std::string&, const std::string&>(), py::arg("matroid_json"),
           py::arg("building_set") = "minimal")
      .def_static("fixture", &Problem::fixture, py::arg("name"), py::arg("building_set") = "minimal")
      .def("matroid", &Problem::matroid)
      .def("lattice", &Problem::lattice)
      .def("building_set", &Problem::building_set)
      .def("cores", &Problem::cores)
      .def("blowup", &Problem::blowup, py::arg("core"))
      .def("os", &Problem::os, py::arg("core") = "")
      .def("dp", &Problem::dp, py::arg("core"))
      .def("model", &Problem::model, py::arg("core"), py::arg("hat"), py::arg("with_cohomology") = true,
           py::arg("threads") = 1)
      .def("verify", &Problem::verify, py::arg("core"), py::arg("threads") = 1,
           py::arg("max_poset_size") = 50'000);
}
