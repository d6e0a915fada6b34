#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "rlsa/bench.hpp"
#include "rlsa/energy.hpp"
#include "rlsa/graph.hpp"
#include "rlsa/langevin.hpp"
#include "rlsa/metrics.hpp"
#include "rlsa/sampler.hpp"

namespace py = pybind11;
using namespace rlsa;

namespace {

std::shared_ptr<const Graph> share(const Graph& g) { return std::make_shared<const Graph>(g); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Regularized Langevin simulated annealing for binary graph problems";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::enum_<ProblemKind>(m, "ProblemKind")
      .value("MIS", ProblemKind::MIS)
      .value("MCL", ProblemKind::MCL)
      .value("MCUT", ProblemKind::MCUT)
      .value("QUBO", ProblemKind::QUBO);
  py::enum_<FlipKernel>(m, "FlipKernel")
      .value("THRESHOLD", FlipKernel::Threshold)
      .value("NORMALIZED", FlipKernel::Normalized);
  py::enum_<InstanceFormat>(m, "InstanceFormat")
      .value("EDGE_LIST", InstanceFormat::EdgeList)
      .value("DIMACS", InstanceFormat::Dimacs);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges) {
             return Graph::from_edge_list(n, edges);
           }),
           py::arg("num_nodes"), py::arg("edges"))
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("degree", &Graph::degree)
      .def("has_edge", &Graph::has_edge)
      .def("neighbors", [](const Graph& g, NodeId u) {
        const auto nb = g.neighbors(u);
        return std::vector<NodeId>(nb.begin(), nb.end());
      })
      .def("edges", &Graph::edges)
      .def(py::self == py::self)
      .def("__repr__", [](const Graph& g) {
        return "<Graph N=" + std::to_string(g.num_nodes()) + " E=" + std::to_string(g.num_edges()) + ">";
      });

  m.def("generate_er", &generate_er, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("generate_ba", &generate_ba, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("parse_instance", py::overload_cast<const std::string&, InstanceFormat>(&parse_instance),
        py::arg("text"), py::arg("format"));
  m.def("write_instance", py::overload_cast<const Graph&, InstanceFormat>(&write_instance),
        py::arg("graph"), py::arg("format"));
  m.def("load_instance", py::overload_cast<const std::string&>(&load_instance), py::arg("path"));

  py::class_<EnergyModel>(m, "EnergyModel")
      .def_static("mis", [](const Graph& g, double beta) { return EnergyModel::mis(share(g), beta); },
                  py::arg("graph"), py::arg("beta") = EnergyModel::kDefaultBeta)
      .def_static("max_clique",
                  [](const Graph& g, double beta) { return EnergyModel::max_clique(share(g), beta); },
                  py::arg("graph"), py::arg("beta") = EnergyModel::kDefaultBeta)
      .def_static("max_cut", [](const Graph& g) { return EnergyModel::max_cut(share(g)); },
                  py::arg("graph"))
      .def_static("qubo",
                  [](const Graph& g, std::vector<double> linear, double scale) {
                    return EnergyModel::qubo(share(g), std::move(linear), scale);
                  },
                  py::arg("graph"), py::arg("linear"), py::arg("quad_scale") = 1.0)
      .def_property_readonly("kind", &EnergyModel::kind)
      .def_property_readonly("num_nodes", [](const EnergyModel& e) { return e.graph().num_nodes(); });

  m.def("energy", [](const EnergyModel& e, const Solution& x) { return energy(e, x); });
  m.def("gradient", [](const EnergyModel& e, const Solution& x) { return gradient(e, x); });
  m.def("delta", [](const EnergyModel& e, const Solution& x) { return delta(e, x); });
  m.def("violation", [](const EnergyModel& e, const Solution& x) { return violation(e, x); });
  m.def("objective", [](const EnergyModel& e, const Solution& x) { return objective(e, x); });

  py::class_<SamplerConfig>(m, "SamplerConfig")
      .def(py::init<>())
      .def_readwrite("tau0", &SamplerConfig::tau0)
      .def_readwrite("d", &SamplerConfig::d)
      .def_readwrite("epsilon", &SamplerConfig::epsilon)
      .def_readwrite("steps", &SamplerConfig::steps)
      .def_readwrite("chains", &SamplerConfig::chains)
      .def_readwrite("seed", &SamplerConfig::seed)
      .def_readwrite("kernel", &SamplerConfig::kernel)
      .def_readwrite("threads", &SamplerConfig::threads);

  py::class_<LDConfig>(m, "LDConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &LDConfig::alpha)
      .def_readwrite("tau0", &LDConfig::tau0)
      .def_readwrite("steps", &LDConfig::steps)
      .def_readwrite("chains", &LDConfig::chains)
      .def_readwrite("seed", &LDConfig::seed)
      .def_readwrite("threads", &LDConfig::threads);

  py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
      .def_readonly("step", &TrajectoryRecord::step)
      .def_readonly("tau", &TrajectoryRecord::tau)
      .def_readonly("best_energy", &TrajectoryRecord::best_energy)
      .def_readonly("mean_energy", &TrajectoryRecord::mean_energy);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("best_x", &RunResult::best_x)
      .def_readonly("best_energy", &RunResult::best_energy)
      .def_readonly("objective", &RunResult::objective)
      .def_readonly("violation", &RunResult::violation)
      .def_readonly("trajectory", &RunResult::trajectory)
      .def_readonly("wall_time_s", &RunResult::wall_time_s)
      .def_readonly("best_chain", &RunResult::best_chain);

  // the solvers release the GIL; they never call back into Python
  m.def("run_rlsa",
        [](const EnergyModel& e, const SamplerConfig& cfg, std::optional<Solution> init) {
          py::gil_scoped_release release;
          return run_rlsa(e, cfg, init);
        },
        py::arg("model"), py::arg("config"), py::arg("init") = py::none());
  m.def("run_ld",
        [](const EnergyModel& e, const LDConfig& cfg, std::optional<Solution> init) {
          py::gil_scoped_release release;
          return run_ld(e, cfg, init);
        },
        py::arg("model"), py::arg("config"), py::arg("init") = py::none());

  m.def("greedy_decode", &greedy_decode, py::arg("model"), py::arg("x"));
  m.def("primal_gap", &primal_gap, py::arg("h"), py::arg("h_star"));
  m.def("temperature", &temperature, py::arg("t"), py::arg("tau0"), py::arg("steps"));

  m.def("presets", [] {
    py::dict out;
    for (const auto& p : bench::presets()) {
      out[p.name] = py::dict(py::arg("problem") = p.problem, py::arg("tau0") = p.tau0,
                             py::arg("d") = p.d, py::arg("chains") = p.chains,
                             py::arg("steps") = p.steps, py::arg("beta") = p.beta);
    }
    return out;
  });
}
