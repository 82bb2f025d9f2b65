#pragma once

// Seeded synthetic logistic-regression instances.
//
// Random stream: std::mt19937_64 (its output sequence is fixed by the C++
// standard). Uniforms take the top 53 bits of each draw; standard normals
// come from the Marsaglia polar method. Within one dataset the draws are
// consumed in this order: the n x d matrix row by row, then x_sol, then the
// n noise terms.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "l0l1fw/core.hpp"
#include "l0l1fw/feasible_sets.hpp"

namespace l0l1fw {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// splitmix64 finalizer of seed + stream * golden-ratio increment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// How rows of the design matrix are drawn before column scaling.
enum class RowSampling {
  standard_normal,  // i.i.d. N(0, 1) entries
  uniform_in_set,   // rows uniform in the instance's feasible set shape
};

struct DataGenConfig {
  std::size_t n_samples = 200;
  std::size_t n_features = 10;
  std::uint64_t seed = 0;
  double scale_base = 2.0;
  double noise_sigma = 0.1;
  double solution_scale = 1.0;
  /// Replaces the random x_sol when set (must have n_features entries).
  std::optional<Vector> x_sol_override;
  RowSampling rows = RowSampling::standard_normal;
  /// Shape used by RowSampling::uniform_in_set.
  std::shared_ptr<const FeasibleSet> row_set;

  void validate() const;
};

struct Dataset {
  Matrix matrix_a;  // n x d, samples as rows, column j scaled by scale_base^j
  Vector labels;    // entries in {-1, +1}
  Vector x_sol;
  std::uint64_t seed_used = 0;  // differs from the config seed after retries
};

/// y = sign(A x_sol + noise) with sign(0) = +1. If one class comes out empty
/// the draw is repeated with derive_seed(seed, attempt), at most 10 times.
Dataset generate_logistic_dataset(const DataGenConfig& config);

/// The n x d matrix of i.i.d. standard normals that generate_logistic_dataset
/// draws first from `seed`, before any column scaling.
Matrix standard_normal_matrix(std::uint64_t seed, std::size_t n, std::size_t d);

/// Dataset as CSV: header f0,...,f{d-1},label; 17 significant digits.
void write_dataset_csv(const Dataset& data, std::ostream& out);

// ---------------------------------------------------------------------------
// Experiment grid

enum class GridSetting { l2ball_npoints, l2ball_dim, simplex_dim, box_dim };

std::string_view to_string(GridSetting setting);
/// Throws std::invalid_argument for unknown names.
GridSetting parse_grid_setting(std::string_view name);

struct GridDefaults {
  std::size_t fixed_features = 10;  // d for l2ball_npoints
  std::size_t fixed_samples = 200;  // n for the *_dim settings
  double ball_radius = 25.0;
  double simplex_scale = 1.0;
  double box_radius = 1.0;
  double noise_sigma = 0.1;
  double scale_base = 2.0;
  double solution_scale = 1.0;
};

struct GridInstance {
  std::string id;
  GridSetting setting;
  DataGenConfig data;
  std::shared_ptr<const FeasibleSet> set;
};

/// One instance per size: L2Ball(0, 25) with growing n or growing d, the unit
/// simplex with growing d, the unit l_inf ball with growing d. Seeds come
/// from derive_seed(master_seed, setting * 1000 + index).
std::vector<GridInstance> experiment_grid(GridSetting setting,
                                          const std::vector<std::size_t>& sizes,
                                          std::uint64_t master_seed,
                                          const GridDefaults& defaults = {});

/// The benchmark grid: every setting with its default sizes.
std::vector<GridInstance> default_grid(std::uint64_t master_seed,
                                       const GridDefaults& defaults = {});
std::vector<std::size_t> default_sizes(GridSetting setting);

}  // namespace l0l1fw
