#include "stackmc/config.hpp"

#include "stackmc/samplers.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace stackmc {

using nlohmann::json;

namespace {

std::string join_problems(const std::vector<std::string>& problems)
{
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto& p : problems) os << "\n  - " << p;
    return os.str();
}

// Collects problems while walking the document so all of them are reported.
class Reader {
public:
    std::vector<std::string> problems;

    void unknown_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
    {
        if (!obj.is_object()) return;
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& item : obj.items()) {
            if (!ok.count(item.key())) problems.push_back(where + ": unknown key '" + item.key() + "'");
        }
    }

    template <typename F>
    void section(const std::string& where, F&& body)
    {
        try {
            body();
        } catch (const ConfigError& e) {
            for (const auto& p : e.problems()) problems.push_back(where + ": " + p);
        } catch (const std::exception& e) {
            problems.push_back(where + ": " + e.what());
        }
    }
};

std::vector<double> box_edge(const json& doc, const char* key, std::size_t dim)
{
    const json& v = doc.at(key);
    if (v.is_number()) return std::vector<double>(dim, v.get<double>());
    auto out = v.get<std::vector<double>>();
    if (out.size() != dim) {
        throw std::invalid_argument(std::string(key) + " has " + std::to_string(out.size()) +
                                    " entries but dim is " + std::to_string(dim));
    }
    return out;
}

std::size_t dim_of(const json& doc)
{
    if (doc.contains("dim")) return doc.at("dim").get<std::size_t>();
    if (doc.contains("lo") && doc.at("lo").is_array()) return doc.at("lo").size();
    return 1;
}

FunctionKind function_kind(const std::string& name)
{
    if (name == "quadratic1d") return FunctionKind::Quadratic1D;
    if (name == "rosenbrock") return FunctionKind::Rosenbrock;
    if (name == "four_peaks") return FunctionKind::FourPeaks;
    throw std::invalid_argument("unknown function kind '" + name + "' (expected quadratic1d, rosenbrock, four_peaks)");
}

std::string function_name(FunctionKind kind)
{
    switch (kind) {
    case FunctionKind::Quadratic1D: return "quadratic1d";
    case FunctionKind::Rosenbrock: return "rosenbrock";
    case FunctionKind::FourPeaks: return "four_peaks";
    }
    return "unknown";
}

SamplerKind sampler_kind(const std::string& name)
{
    for (auto k : {SamplerKind::Simple, SamplerKind::LatinHypercube, SamplerKind::Halton, SamplerKind::Importance}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown sampler kind '" + name +
                                "' (expected simple, latin_hypercube, halton, importance)");
}

VariantKind variant_kind(const std::string& name)
{
    for (auto k : {VariantKind::Plain, VariantKind::QuasiMC, VariantKind::Importance}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown variant kind '" + name + "' (expected plain, quasimc, importance)");
}

FitterSpec parse_fitter(const json& doc, Reader& r, const std::string& where)
{
    r.unknown_keys(doc, where, {"kind", "harmonics", "frequency", "max_order", "ridge"});
    FitterSpec f;
    f.kind = fitter_kind_from_string(doc.at("kind").get<std::string>());
    f.harmonics = doc.value("harmonics", 6);
    const std::string freq = doc.value("frequency", std::string("periodic"));
    if (freq == "periodic") {
        f.frequency = FourierFrequency::Periodic;
    } else if (freq == "literal") {
        f.frequency = FourierFrequency::Literal;
    } else {
        throw std::invalid_argument("unknown Fourier frequency '" + freq + "' (expected periodic or literal)");
    }
    f.max_order = doc.value("max_order", 2);
    f.ridge = doc.value("ridge", 0.0);
    return f;
}

json fitter_json(const FitterSpec& f)
{
    json j{{"kind", to_string(f.kind)}, {"ridge", f.ridge}};
    if (f.kind == FitterKind::Fourier) {
        j["harmonics"] = f.harmonics;
        j["frequency"] = f.frequency == FourierFrequency::Periodic ? "periodic" : "literal";
    }
    if (f.kind == FitterKind::Walsh) j["max_order"] = f.max_order;
    return j;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems))
{
}

TestFunction FunctionSpec::make() const
{
    switch (kind) {
    case FunctionKind::Quadratic1D: return TestFunction::quadratic1d();
    case FunctionKind::Rosenbrock: return TestFunction::rosenbrock(dim);
    case FunctionKind::FourPeaks: return TestFunction::four_peaks(dim, threshold);
    }
    throw std::invalid_argument("unknown function kind");
}

std::string to_string(SamplerKind kind)
{
    switch (kind) {
    case SamplerKind::Simple: return "simple";
    case SamplerKind::LatinHypercube: return "latin_hypercube";
    case SamplerKind::Halton: return "halton";
    case SamplerKind::Importance: return "importance";
    }
    return "unknown";
}

std::string to_string(VariantKind kind)
{
    switch (kind) {
    case VariantKind::Plain: return "plain";
    case VariantKind::QuasiMC: return "quasimc";
    case VariantKind::Importance: return "importance";
    }
    return "unknown";
}

json to_json(const Distribution& p)
{
    if (p.is<UniformBox>()) {
        const auto& b = p.as<UniformBox>();
        return {{"kind", "uniform_box"}, {"lo", b.lo}, {"hi", b.hi}};
    }
    if (p.is<GaussianIID>()) {
        const auto& g = p.as<GaussianIID>();
        return {{"kind", "gaussian"}, {"mu", g.mu}, {"sigma", g.sigma}, {"dim", g.dim}};
    }
    if (p.is<UniformBits>()) return {{"kind", "uniform_bits"}, {"dim", p.dim()}};
    const auto& q = p.as<ProductQuadratic>();
    return {{"kind", "product_quadratic"}, {"lo", q.lo}, {"hi", q.hi}};
}

Distribution parse_distribution(const json& doc)
{
    const std::string kind = doc.at("kind").get<std::string>();
    const std::size_t dim = dim_of(doc);
    if (kind == "uniform_box") return Distribution::uniform_box(box_edge(doc, "lo", dim), box_edge(doc, "hi", dim));
    if (kind == "product_quadratic") {
        return Distribution::product_quadratic(box_edge(doc, "lo", dim), box_edge(doc, "hi", dim));
    }
    if (kind == "gaussian") return Distribution::gaussian(doc.value("mu", 0.0), doc.value("sigma", 1.0), dim);
    if (kind == "uniform_bits") return Distribution::uniform_bits(dim);
    throw std::invalid_argument("unknown distribution kind '" + kind +
                                "' (expected uniform_box, gaussian, uniform_bits, product_quadratic)");
}

std::vector<std::string> validate(const ExperimentConfig& c)
{
    std::vector<std::string> problems;
    std::optional<TestFunction> fn;
    try {
        fn = c.function.make();
    } catch (const std::exception& e) {
        problems.push_back(std::string("function: ") + e.what());
    }
    const std::size_t d = c.distribution.dim();
    if (fn && fn->dim() != d) {
        problems.push_back("function dimension " + std::to_string(fn->dim()) +
                           " does not match distribution dimension " + std::to_string(d));
    }
    if (fn) {
        try {
            (void)reference_mean(*fn, c.distribution);
        } catch (const std::exception& e) {
            problems.push_back(std::string("no reference mean: ") + e.what());
        }
    }
    if (c.fitters.empty()) problems.push_back("fitters: at least one fitter is required");
    for (std::size_t i = 0; i < c.fitters.size(); ++i) {
        try {
            c.fitters[i].validate();
        } catch (const std::exception& e) {
            problems.push_back("fitters[" + std::to_string(i) + "]: " + e.what());
        }
        const bool bits = c.distribution.is<UniformBits>();
        if (bits != (c.fitters[i].kind == FitterKind::Walsh)) {
            problems.push_back("fitters[" + std::to_string(i) + "]: " + c.fitters[i].label() +
                               (bits ? " is not defined on bit strings" : " needs a bit-string distribution"));
        }
    }
    if (c.folds && *c.folds < 2) problems.push_back("folds must be at least 2");
    if (c.alpha_methods.empty()) problems.push_back("alpha.methods: at least one method is required");
    if (c.n_grid.empty()) problems.push_back("n_grid must not be empty");
    for (std::size_t n : c.n_grid) {
        const std::size_t k = c.folds.value_or(2);
        if (n < k || n < 2) {
            problems.push_back("n_grid entry " + std::to_string(n) + " is smaller than the fold count " +
                               std::to_string(k));
        }
    }
    if (c.trials < 1) problems.push_back("trials must be at least 1");
    if (c.fit_mean_samples && *c.fit_mean_samples < 1) problems.push_back("fit_mean.mc_samples must be at least 1");

    const bool continuous = c.distribution.continuous();
    switch (c.sampler.kind) {
    case SamplerKind::Simple: break;
    case SamplerKind::LatinHypercube:
    case SamplerKind::Halton:
        if (!continuous) problems.push_back("sampler: " + to_string(c.sampler.kind) + " needs a continuous distribution");
        if (c.sampler.kind == SamplerKind::Halton && d > halton_max_dim()) {
            problems.push_back("sampler: halton supports at most " + std::to_string(halton_max_dim()) + " dimensions");
        }
        break;
    case SamplerKind::Importance:
        if (!c.sampler.proposal) {
            problems.push_back("sampler: importance sampling needs a proposal distribution");
        } else if (c.sampler.proposal->dim() != d) {
            problems.push_back("sampler: proposal dimension does not match the distribution");
        }
        break;
    }
    const bool is_sampler = c.sampler.kind == SamplerKind::Importance;
    const bool is_variant = c.variant.kind == VariantKind::Importance;
    if (is_sampler != is_variant) {
        problems.push_back("the importance variant and the importance sampler must be used together");
    }
    if (c.variant.kind == VariantKind::QuasiMC && c.variant.repeats < 1) {
        problems.push_back("variant: repeats must be at least 1");
    }
    if (is_variant && c.variant.n_mean < 1) problems.push_back("variant: n_mean must be at least 1");
    for (const auto& e : c.emit) {
        if (e != "csv" && e != "json" && e != "svg") {
            problems.push_back("emit: unknown format '" + e + "' (expected csv, json, svg)");
        }
    }
    return problems;
}

json to_json(const ExperimentConfig& c)
{
    json doc;
    doc["name"] = c.name;
    json fn{{"kind", function_name(c.function.kind)}, {"dim", c.function.dim}};
    if (c.function.kind == FunctionKind::FourPeaks) fn["threshold"] = c.function.threshold;
    doc["function"] = fn;
    doc["distribution"] = to_json(c.distribution);

    json sampler{{"kind", to_string(c.sampler.kind)}};
    if (c.sampler.kind == SamplerKind::Halton) {
        sampler["scramble"] = c.sampler.scramble;
        if (c.sampler.scramble_seed) sampler["scramble_seed"] = *c.sampler.scramble_seed;
        sampler["burn_in"] = c.sampler.burn_in ? json(*c.sampler.burn_in) : json("random");
    }
    if (c.sampler.proposal) sampler["proposal"] = to_json(*c.sampler.proposal);
    doc["sampler"] = sampler;

    doc["fitters"] = json::array();
    for (const auto& f : c.fitters) doc["fitters"].push_back(fitter_json(f));
    doc["folds"] = c.folds ? json(*c.folds) : json("loo");

    json alpha{{"assume_unbiased_g", c.assume_unbiased_g}, {"fold_statistic", to_string(c.fold_statistic)}};
    alpha["methods"] = json::array();
    for (auto m : c.alpha_methods) alpha["methods"].push_back(to_string(m));
    doc["alpha"] = alpha;
    doc["fit_mean"] = c.fit_mean_samples ? json{{"mc_samples", *c.fit_mean_samples}} : json("analytic");

    json variant{{"kind", to_string(c.variant.kind)}};
    if (c.variant.kind == VariantKind::QuasiMC) variant["repeats"] = c.variant.repeats;
    if (c.variant.kind == VariantKind::Importance) variant["n_mean"] = c.variant.n_mean;
    doc["variant"] = variant;

    doc["n_grid"] = c.n_grid;
    doc["trials"] = c.trials;
    doc["seed"] = c.seed;
    doc["threads"] = c.threads;
    doc["output"] = c.output;
    doc["emit"] = c.emit;
    return doc;
}

ExperimentConfig parse_config(const json& doc)
{
    if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});
    Reader r;
    ExperimentConfig c;
    r.unknown_keys(doc, "config",
                   {"name", "function", "distribution", "sampler", "fitters", "folds", "alpha", "fit_mean", "variant",
                    "n_grid", "trials", "seed", "threads", "output", "emit"});

    r.section("name", [&] { c.name = doc.value("name", c.name); });
    r.section("function", [&] {
        const json& f = doc.at("function");
        r.unknown_keys(f, "function", {"kind", "dim", "threshold"});
        c.function.kind = function_kind(f.at("kind").get<std::string>());
        c.function.dim = f.value("dim", std::size_t{1});
        c.function.threshold = f.value("threshold", -1);
    });
    r.section("distribution", [&] {
        const json& p = doc.at("distribution");
        r.unknown_keys(p, "distribution", {"kind", "dim", "lo", "hi", "mu", "sigma"});
        c.distribution = parse_distribution(p);
    });
    r.section("sampler", [&] {
        if (!doc.contains("sampler")) return;
        const json& s = doc.at("sampler");
        r.unknown_keys(s, "sampler", {"kind", "scramble", "scramble_seed", "burn_in", "proposal"});
        c.sampler.kind = sampler_kind(s.at("kind").get<std::string>());
        c.sampler.scramble = s.value("scramble", true);
        if (s.contains("scramble_seed")) c.sampler.scramble_seed = s.at("scramble_seed").get<std::uint64_t>();
        if (s.contains("burn_in")) {
            const json& b = s.at("burn_in");
            if (b.is_string()) {
                if (b.get<std::string>() != "random") throw std::invalid_argument("burn_in must be an integer or \"random\"");
            } else {
                c.sampler.burn_in = b.get<std::uint64_t>();
            }
        }
        if (s.contains("proposal")) c.sampler.proposal = parse_distribution(s.at("proposal"));
    });
    r.section("fitters", [&] {
        const json& fs = doc.at("fitters");
        if (!fs.is_array()) throw std::invalid_argument("must be an array");
        c.fitters.clear();
        for (std::size_t i = 0; i < fs.size(); ++i) c.fitters.push_back(parse_fitter(fs[i], r, "fitters[" + std::to_string(i) + "]"));
    });
    r.section("folds", [&] {
        if (!doc.contains("folds")) return;
        const json& k = doc.at("folds");
        if (k.is_string()) {
            if (k.get<std::string>() != "loo") throw std::invalid_argument("must be an integer or \"loo\"");
            c.folds.reset();
        } else {
            c.folds = k.get<std::size_t>();
        }
    });
    r.section("alpha", [&] {
        if (!doc.contains("alpha")) return;
        const json& a = doc.at("alpha");
        r.unknown_keys(a, "alpha", {"methods", "assume_unbiased_g", "fold_statistic"});
        if (a.contains("methods")) {
            c.alpha_methods.clear();
            for (const auto& m : a.at("methods")) c.alpha_methods.push_back(alpha_method_from_string(m.get<std::string>()));
        }
        c.assume_unbiased_g = a.value("assume_unbiased_g", false);
        c.fold_statistic = fold_statistic_from_string(a.value("fold_statistic", std::string("held_out")));
    });
    r.section("fit_mean", [&] {
        if (!doc.contains("fit_mean")) return;
        const json& m = doc.at("fit_mean");
        if (m.is_string()) {
            if (m.get<std::string>() != "analytic") throw std::invalid_argument("must be \"analytic\" or {\"mc_samples\": n}");
            c.fit_mean_samples.reset();
        } else {
            r.unknown_keys(m, "fit_mean", {"mc_samples"});
            c.fit_mean_samples = m.at("mc_samples").get<std::size_t>();
        }
    });
    r.section("variant", [&] {
        if (!doc.contains("variant")) return;
        const json& v = doc.at("variant");
        r.unknown_keys(v, "variant", {"kind", "repeats", "n_mean"});
        c.variant.kind = variant_kind(v.at("kind").get<std::string>());
        c.variant.repeats = v.value("repeats", std::size_t{10});
        c.variant.n_mean = v.value("n_mean", std::size_t{300});
    });
    r.section("n_grid", [&] { c.n_grid = doc.at("n_grid").get<std::vector<std::size_t>>(); });
    r.section("trials", [&] { c.trials = doc.value("trials", c.trials); });
    r.section("seed", [&] { c.seed = doc.value("seed", c.seed); });
    r.section("threads", [&] { c.threads = doc.value("threads", c.threads); });
    r.section("output", [&] { c.output = doc.value("output", c.output); });
    r.section("emit", [&] {
        if (doc.contains("emit")) c.emit = doc.at("emit").get<std::vector<std::string>>();
    });

    if (r.problems.empty()) {
        for (auto& p : validate(c)) r.problems.push_back(std::move(p));
    }
    if (!r.problems.empty()) throw ConfigError(std::move(r.problems));
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError({"cannot parse '" + path + "': " + e.what()});
    }
    return parse_config(doc);
}

}  // namespace stackmc
