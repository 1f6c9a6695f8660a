#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entroprune/distributed.hpp"
#include "entroprune/ensemble_io.hpp"
#include "entroprune/pruners.hpp"

namespace py = pybind11;
using namespace entroprune;

namespace {

BestCriterion criterion_from_name(const std::string& name) {
    if (name == "tdas") return BestCriterion::tdas;
    if (name == "accuracy" || name == "voted-accuracy") return BestCriterion::eval_accuracy;
    throw std::invalid_argument("unknown criterion: " + name + " (tdas, accuracy)");
}

py::dict wall_times_dict(const PhaseTimes& times) {
    py::dict d;
    d["partition"] = times.partition_s;
    d["group"] = times.group_s;
    d["union"] = times.union_s;
    d["compare"] = times.compare_s;
    d["total"] = times.total_s;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Entropy-objective ensemble pruning: greedy and two-round distributed selection";

    py::class_<EnsemblePredictions>(m, "EnsemblePredictions")
        .def(py::init<std::vector<LabelVector>, LabelVector>(), py::arg("rows"), py::arg("labels"))
        .def(py::init<std::vector<LabelVector>, LabelVector, int>(), py::arg("rows"),
             py::arg("labels"), py::arg("n_classes"))
        .def_property_readonly("n", &EnsemblePredictions::n)
        .def_property_readonly("d", &EnsemblePredictions::d)
        .def_property_readonly("n_classes", &EnsemblePredictions::n_classes)
        .def("row", &EnsemblePredictions::row, py::arg("i"))
        .def("rows", &EnsemblePredictions::rows)
        .def("labels", &EnsemblePredictions::labels)
        .def(
            "subset",
            [](const EnsemblePredictions& ens, const std::vector<int>& indices) {
                return ens.subset(indices);
            },
            py::arg("indices"));

    py::class_<Selection>(m, "Selection")
        .def_readonly("indices", &Selection::indices)
        .def_readonly("tdas", &Selection::tdas)
        .def_readonly("tdac_eval_count", &Selection::eval_count)
        .def_readonly("k_clamped", &Selection::k_clamped)
        .def("__repr__", [](const Selection& sel) {
            std::string s = "Selection(indices=[";
            for (std::size_t i = 0; i < sel.indices.size(); ++i) {
                if (i) s += ", ";
                s += std::to_string(sel.indices[i]);
            }
            return s + "], tdas=" + std::to_string(sel.tdas) + ")";
        });

    py::class_<Partition>(m, "Partition")
        .def_readonly("groups", &Partition::groups)
        .def_readonly("seed", &Partition::seed);

    py::class_<DistributedResult>(m, "DistributedResult")
        .def_readonly("best", &DistributedResult::best)
        .def_readonly("per_group", &DistributedResult::per_group)
        .def_readonly("partition", &DistributedResult::partition)
        .def_readonly("union_pool", &DistributedResult::union_pool)
        .def_readonly("union_selection", &DistributedResult::union_selection)
        .def_readonly("winner_group", &DistributedResult::winner_group)
        .def_readonly("tdac_eval_count_total", &DistributedResult::eval_count_total)
        .def_readonly("tdac_eval_count_critical", &DistributedResult::eval_count_critical)
        .def_property_readonly(
            "wall_times", [](const DistributedResult& r) { return wall_times_dict(r.wall_times); });

    m.def(
        "entropy", [](const LabelVector& x, double log_base) { return entropy(x, log_base); },
        py::arg("x"), py::arg("log_base") = 2.0);
    m.def(
        "joint_entropy",
        [](const LabelVector& x, const LabelVector& y, double log_base) {
            return joint_entropy(x, y, log_base);
        },
        py::arg("x"), py::arg("y"), py::arg("log_base") = 2.0);
    m.def(
        "mutual_information",
        [](const LabelVector& x, const LabelVector& y, double log_base) {
            return mutual_information(x, y, log_base);
        },
        py::arg("x"), py::arg("y"), py::arg("log_base") = 2.0);
    m.def(
        "norm_mi",
        [](const LabelVector& x, const LabelVector& y, double log_base) {
            return norm_mi(x, y, log_base);
        },
        py::arg("x"), py::arg("y"), py::arg("log_base") = 2.0);
    m.def(
        "norm_vi",
        [](const LabelVector& x, const LabelVector& y, double log_base) {
            return norm_vi(x, y, log_base);
        },
        py::arg("x"), py::arg("y"), py::arg("log_base") = 2.0);
    m.def(
        "cohen_kappa", [](const LabelVector& x, const LabelVector& y) { return cohen_kappa(x, y); },
        py::arg("x"), py::arg("y"));

    m.def("tdac", &tdac, py::arg("ens"), py::arg("i"), py::arg("j"), py::arg("lam"));
    m.def(
        "tdas_pairwise",
        [](const EnsemblePredictions& ens, const std::vector<int>& subset, double lam) {
            return tdas_pairwise(ens, subset, lam);
        },
        py::arg("ens"), py::arg("subset"), py::arg("lam"));
    m.def(
        "tdas_decomposed",
        [](const EnsemblePredictions& ens, const std::vector<int>& subset, double lam) {
            return tdas_decomposed(ens, subset, lam);
        },
        py::arg("ens"), py::arg("subset"), py::arg("lam"));

    m.def(
        "brute_force_optimum",
        [](const EnsemblePredictions& ens, double lam, int k, std::uint64_t cap) {
            const auto result = brute_force_optimum(ens, {lam, k}, cap);
            return py::make_tuple(result.indices, result.tdas);
        },
        py::arg("ens"), py::arg("lam"), py::arg("k"), py::arg("cap") = kDefaultEnumerationCap);

    m.def(
        "comep", [](const EnsemblePredictions& ens, double lam, int k) { return comep(ens, {lam, k}); },
        py::arg("ens"), py::arg("lam"), py::arg("k"));
    m.def(
        "reduce_error_pruner",
        [](const EnsemblePredictions& ens, double lam, int k) {
            return reduce_error_pruner(ens, {lam, k}, ens.labels());
        },
        py::arg("ens"), py::arg("lam"), py::arg("k"));
    m.def(
        "kappa_pruner",
        [](const EnsemblePredictions& ens, double lam, int k) { return kappa_pruner(ens, {lam, k}); },
        py::arg("ens"), py::arg("lam"), py::arg("k"));
    m.def(
        "random_pruner",
        [](const EnsemblePredictions& ens, double lam, int k, std::uint64_t seed) {
            return random_pruner(ens, {lam, k}, seed);
        },
        py::arg("ens"), py::arg("lam"), py::arg("k"), py::arg("seed"));

    m.def(
        "partition",
        [](int n, int machines, std::uint64_t seed) { return make_partition(n, machines, seed); },
        py::arg("n"), py::arg("machines"), py::arg("seed"));

    m.def(
        "domep",
        [](const EnsemblePredictions& ens, double lam, int k, int machines, std::uint64_t seed,
           int workers) { return domep(ens, {lam, k}, machines, seed, workers); },
        py::arg("ens"), py::arg("lam"), py::arg("k"), py::arg("machines"), py::arg("seed"),
        py::arg("workers") = 0);
    m.def(
        "epfd",
        [](const EnsemblePredictions& ens, double lam, int k, int machines, const std::string& alg,
           const std::string& criterion, std::uint64_t seed, int workers) {
            const PluginRegistry registry = PluginRegistry::with_builtins();
            return epfd(ens, {lam, k}, machines, registry.get(alg), criterion_from_name(criterion),
                        seed, workers);
        },
        py::arg("ens"), py::arg("lam"), py::arg("k"), py::arg("machines"), py::arg("alg"),
        py::arg("criterion") = "tdas", py::arg("seed") = 0, py::arg("workers") = 0);
    m.def("plugin_names", [] { return PluginRegistry::with_builtins().names(); });

    m.def(
        "benchmark_speedup",
        [](const EnsemblePredictions& ens, double lam, int k, const std::vector<int>& m_list,
           int repetitions, std::uint64_t seed, int workers) {
            py::list rows;
            for (const SpeedupRow& row :
                 benchmark_speedup(ens, {lam, k}, m_list, repetitions, seed, workers)) {
                py::dict entry;
                entry["m"] = row.machines;
                entry["centralized_time_s"] = row.centralized_time_s;
                entry["time_s"] = row.distributed_time_s;
                entry["speedup"] = row.speedup;
                entry["efficiency"] = row.efficiency;
                entry["centralized_eval_count"] = row.centralized_evals;
                entry["eval_count"] = row.distributed_evals_critical;
                entry["eval_count_total"] = row.distributed_evals_total;
                entry["eval_ratio"] = row.eval_ratio;
                rows.append(entry);
            }
            return rows;
        },
        py::arg("ens"), py::arg("lam"), py::arg("k"), py::arg("m_list"), py::arg("repetitions") = 3,
        py::arg("seed") = 0, py::arg("workers") = 0);

    m.def(
        "majority_vote",
        [](const EnsemblePredictions& ens, const std::vector<int>& subset) {
            return majority_vote(ens, subset);
        },
        py::arg("ens"), py::arg("subset"));
    m.def("accuracy", &accuracy, py::arg("predictions"), py::arg("truth"));

    m.def("synthetic_ensemble", &synthetic_ensemble, py::arg("n"), py::arg("d"), py::arg("n_c"),
          py::arg("base_accuracy"), py::arg("correlation"), py::arg("seed"));
    m.def("load_predictions", &load_predictions, py::arg("predictions_path"), py::arg("labels_path"));
    m.def("save_predictions", &save_predictions, py::arg("ens"), py::arg("predictions_path"),
          py::arg("labels_path"));
}
