#include "stackmc/presets.hpp"

#include <map>

namespace stackmc {

namespace {

// With K = 5 the improved estimator sees only five fold samples, so the
// 5-fold presets use the pooled N-sample estimator.
constexpr AlphaMethod kFiveFoldAlpha = AlphaMethod::Original;

ExperimentConfig rosenbrock_box()
{
    ExperimentConfig c;
    c.function = {FunctionKind::Rosenbrock, 10};
    c.distribution = Distribution::uniform_box(-3.0, 3.0, 10);
    c.fitters = {FitterSpec::poly3()};
    c.folds = 5;
    c.alpha_methods = {kFiveFoldAlpha};
    c.trials = 300;
    return c;
}

struct Entry {
    std::string description;
    ExperimentConfig (*make)();
};

const std::map<std::string, Entry>& registry()
{
    static const std::map<std::string, Entry> entries{
        {"fig1",
         {"(x-0.2)^2 on U[0,1], linear fit, leave-one-out; original vs improved alpha",
          [] {
              ExperimentConfig c;
              c.name = "fig1";
              c.function = {FunctionKind::Quadratic1D, 1};
              c.distribution = Distribution::uniform_box(0.0, 1.0, 1);
              c.fitters = {FitterSpec::linear()};
              c.folds.reset();
              c.alpha_methods = {AlphaMethod::Improved, AlphaMethod::Original};
              c.n_grid = {4, 5, 6, 8, 12, 16, 24, 32};
              c.trials = 20000;
              return c;
          }}},
        {"fig2",
         {"10-D Rosenbrock on U[-3,3]^10, poly3 + Fourier fitters, 5 folds",
          [] {
              ExperimentConfig c = rosenbrock_box();
              c.name = "fig2";
              c.fitters = {FitterSpec::poly3(), FitterSpec::fourier()};
              c.n_grid = {40, 80, 160, 320, 640};
              return c;
          }}},
        {"fig3",
         {"10-D Rosenbrock, Latin-hypercube samples on [-3,3]^10, poly3, bootstrap repair",
          [] {
              ExperimentConfig c = rosenbrock_box();
              c.name = "fig3";
              c.sampler.kind = SamplerKind::LatinHypercube;
              c.variant = {VariantKind::QuasiMC, 10, 300};
              c.n_grid = {40, 160, 640};
              return c;
          }}},
        {"fig4",
         {"10-D Rosenbrock, scrambled Halton mapped to N(0, 2^2), poly3, bootstrap repair",
          [] {
              ExperimentConfig c = rosenbrock_box();
              c.name = "fig4";
              c.distribution = Distribution::gaussian(0.0, 2.0, 10);
              c.sampler.kind = SamplerKind::Halton;
              c.sampler.scramble = true;
              c.variant = {VariantKind::QuasiMC, 10, 300};
              c.n_grid = {40, 160, 640};
              return c;
          }}},
        {"fig5",
         {"10-D Rosenbrock on U[-3,3]^10 via importance sampling from a product-quadratic q",
          [] {
              ExperimentConfig c = rosenbrock_box();
              c.name = "fig5";
              c.sampler.kind = SamplerKind::Importance;
              c.sampler.proposal = Distribution::product_quadratic(-3.0, 3.0, 10);
              c.variant = {VariantKind::Importance, 10, 300};
              c.n_grid = {80, 160, 320};
              return c;
          }}},
        {"fig6",
         {"Four Peaks (d=16, T=2) on uniform bit strings, order-2 Walsh fit",
          [] {
              ExperimentConfig c;
              c.name = "fig6";
              c.function = {FunctionKind::FourPeaks, 16, 2};
              c.distribution = Distribution::uniform_bits(16);
              c.fitters = {FitterSpec::walsh(2)};
              c.folds = 5;
              c.alpha_methods = {kFiveFoldAlpha};
              c.n_grid = {50, 100, 200, 400};
              c.trials = 500;
              return c;
          }}},
    };
    return entries;
}

}  // namespace

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, entry] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

std::string preset_description(const std::string& name)
{
    auto it = registry().find(name);
    return it == registry().end() ? std::string() : it->second.description;
}

ExperimentConfig preset(const std::string& name)
{
    auto it = registry().find(name);
    if (it == registry().end()) {
        std::string valid;
        for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
        throw ConfigError({"unknown preset '" + name + "' (valid: " + valid + ")"});
    }
    ExperimentConfig c = it->second.make();
    c.output = "results/" + name;
    return c;
}

}  // namespace stackmc
