#include "stackmc/config.hpp"
#include "stackmc/emit.hpp"
#include "stackmc/engine.hpp"
#include "stackmc/experiment.hpp"
#include "stackmc/presets.hpp"
#include "stackmc/testfunctions.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace stackmc;

namespace {

ExperimentConfig config_from_text(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    return parse_config(doc);
}

py::dict row_dict(const ResultRow& r)
{
    py::dict d;
    d["n"] = r.n;
    d["estimator"] = r.estimator;
    d["mse"] = r.mse;
    d["stderr"] = r.std_error;
    d["trials"] = r.trials;
    return d;
}

std::vector<ResultRow> rows_from(const py::list& rows)
{
    std::vector<ResultRow> out;
    for (const auto& item : rows) {
        const auto d = item.cast<py::dict>();
        out.push_back({d["n"].cast<std::size_t>(), d["estimator"].cast<std::string>(), d["mse"].cast<double>(),
                       d["stderr"].cast<double>(), d["trials"].cast<std::size_t>()});
    }
    return out;
}

DataSet dataset_from(const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
                     const py::array_t<double, py::array::c_style | py::array::forcecast>& values)
{
    if (points.ndim() != 2) throw std::invalid_argument("points must be a 2-D array (n, d)");
    if (values.ndim() != 1) throw std::invalid_argument("values must be a 1-D array");
    const auto n = static_cast<std::size_t>(points.shape(0));
    const auto d = static_cast<std::size_t>(points.shape(1));
    if (static_cast<std::size_t>(values.shape(0)) != n) throw std::invalid_argument("points and values differ in length");
    DataSet data{PointSet(d), std::vector<double>(values.data(), values.data() + n), std::nullopt};
    data.points.data().assign(points.data(), points.data() + n * d);
    return data;
}

FitterSpec fitter_from(const std::string& kind, int harmonics, int max_order)
{
    FitterSpec spec;
    spec.kind = fitter_kind_from_string(kind);
    spec.harmonics = harmonics;
    spec.max_order = max_order;
    spec.validate();
    return spec;
}

}  // namespace

PYBIND11_MODULE(_stackmc, m)
{
    m.doc() = "Stacked Monte Carlo estimators and experiment harness";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("preset_names", &preset_names);
    m.def("preset_description", &preset_description, py::arg("name"));
    m.def(
        "preset_config", [](const std::string& name) { return to_json(preset(name)).dump(); }, py::arg("name"),
        "Preset configuration as JSON text.");
    m.def(
        "normalize_config", [](const std::string& text) { return to_json(config_from_text(text)).dump(); },
        py::arg("config_json"), "Parses, validates and re-serializes a configuration.");
    m.def(
        "estimator_names", [](const std::string& text) { return estimator_names(config_from_text(text)); },
        py::arg("config_json"));
    m.def(
        "run_experiment",
        [](const std::string& text, std::size_t threads) {
            const ExperimentConfig config = config_from_text(text);
            ExperimentResult result;
            {
                py::gil_scoped_release release;
                result = run_experiment(config, threads);
            }
            py::list rows;
            for (const auto& r : result.rows) rows.append(row_dict(r));
            return rows;
        },
        py::arg("config_json"), py::arg("threads") = 0, "Runs an experiment and returns its result rows.");
    m.def(
        "to_csv", [](const py::list& rows) { return to_csv(rows_from(rows)); }, py::arg("rows"));
    m.def(
        "reference_mean",
        [](const std::string& text) {
            const ExperimentConfig c = config_from_text(text);
            return reference_mean(c.function.make(), c.distribution);
        },
        py::arg("config_json"), "Exact E_p[f] for the configured function and distribution.");
    m.def(
        "estimate",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
           const std::string& distribution_json, const std::string& fitter, std::size_t folds, std::uint64_t seed,
           const std::string& alpha, std::optional<double> fixed_alpha, int harmonics, int max_order) {
            const DataSet data = dataset_from(points, values);
            const Distribution p = parse_distribution(nlohmann::json::parse(distribution_json));
            RngStream rng(seed);
            const FoldPartition partition = make_partition(data.size(), folds, rng);
            AlphaOptions options;
            options.method = alpha_method_from_string(alpha);
            options.fixed = fixed_alpha;
            const EstimateReport r =
                stackmc_estimate(data, partition, fitter_from(fitter, harmonics, max_order), p, options);
            py::dict out;
            out["estimate"] = r.estimate;
            out["alpha"] = r.alpha.at(0);
            out["mc"] = r.mc_baseline;
            out["method"] = r.method;
            return out;
        },
        py::arg("points"), py::arg("values"), py::arg("distribution_json"), py::arg("fitter") = "linear",
        py::arg("folds") = 5, py::arg("seed") = 1, py::arg("alpha") = "improved", py::arg("fixed_alpha") = py::none(),
        py::arg("harmonics") = 6, py::arg("max_order") = 2,
        "StackMC estimate of E_p[f] from samples x_i ~ p and values f(x_i).");
    m.def(
        "paired_stderr",
        [](const std::vector<double>& a, const std::vector<double>& b) { return paired_stderr(a, b); }, py::arg("a"),
        py::arg("b"));
}
