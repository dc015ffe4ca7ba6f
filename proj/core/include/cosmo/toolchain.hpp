#pragma once

#include <atomic>
#include <string_view>
#include <utility>
#include <vector>

#include "cosmo/fem.hpp"
#include "cosmo/geometry.hpp"
#include "cosmo/materials.hpp"
#include "cosmo/postproc.hpp"
#include "cosmo/result.hpp"

namespace cosmo {

/// The four tool stages behind one seam, so callers (episodes, re-runs,
/// tests) can substitute instrumented or failing implementations.
class ToolchainApi {
 public:
  virtual ~ToolchainApi() = default;

  virtual Result<MeshModel> cad_generate(std::string_view category,
                                         const std::vector<double>& params,
                                         int resolution) = 0;
  virtual Result<FemField> cae_solve(const MeshModel& mesh, const Material& mat,
                                     const SimSetting& setting) = 0;
  /// (u_max, sigma_max)
  virtual Result<std::pair<double, double>> extract_results(
      const FemField& field) = 0;
  virtual Result<double> compute_cost(double volume_mm3,
                                      const Material& mat) = 0;
};

/// Production toolchain: geometry, fem and postproc modules as-is.
class Toolchain : public ToolchainApi {
 public:
  Result<MeshModel> cad_generate(std::string_view category,
                                 const std::vector<double>& params,
                                 int resolution) override;
  Result<FemField> cae_solve(const MeshModel& mesh, const Material& mat,
                             const SimSetting& setting) override;
  Result<std::pair<double, double>> extract_results(
      const FemField& field) override;
  Result<double> compute_cost(double volume_mm3, const Material& mat) override;
};

/// Decorator counting every tool invocation; thread-safe.
class CountingToolchain : public ToolchainApi {
 public:
  explicit CountingToolchain(ToolchainApi& inner) : inner_(inner) {}

  long calls() const { return calls_.load(); }
  void reset() { calls_.store(0); }

  Result<MeshModel> cad_generate(std::string_view category,
                                 const std::vector<double>& params,
                                 int resolution) override {
    ++calls_;
    return inner_.cad_generate(category, params, resolution);
  }
  Result<FemField> cae_solve(const MeshModel& mesh, const Material& mat,
                             const SimSetting& setting) override {
    ++calls_;
    return inner_.cae_solve(mesh, mat, setting);
  }
  Result<std::pair<double, double>> extract_results(
      const FemField& field) override {
    ++calls_;
    return inner_.extract_results(field);
  }
  Result<double> compute_cost(double volume_mm3, const Material& mat) override {
    ++calls_;
    return inner_.compute_cost(volume_mm3, mat);
  }

 private:
  ToolchainApi& inner_;
  std::atomic<long> calls_{0};
};

/// One full build -> solve -> extract -> cost pass.
struct ChainOutcome {
  FeedbackTuple feedback;
  double volume_mm3 = 0;
  SolveStats stats;
};

Result<ChainOutcome> run_chain(ToolchainApi& tools, std::string_view category,
                               const std::vector<double>& params,
                               const Material& mat, const SimSetting& setting);

}  // namespace cosmo
