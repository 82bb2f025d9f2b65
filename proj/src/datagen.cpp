#include "l0l1fw/datagen.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "l0l1fw/trace_io.hpp"

namespace l0l1fw {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  return u * factor;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void DataGenConfig::validate() const {
  if (n_samples < 1 || n_features < 1) {
    throw std::invalid_argument("datagen: n_samples and n_features must be >= 1");
  }
  if (!(scale_base > 1.0)) throw std::invalid_argument("datagen: scale_base must be > 1");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("datagen: noise_sigma must be >= 0");
  if (!(solution_scale > 0.0)) throw std::invalid_argument("datagen: solution_scale must be > 0");
  if (x_sol_override && static_cast<std::size_t>(x_sol_override->size()) != n_features) {
    throw std::invalid_argument("datagen: x_sol override has the wrong length");
  }
  if (rows == RowSampling::uniform_in_set) {
    if (!row_set || row_set->dimension() != n_features) {
      throw std::invalid_argument("datagen: uniform_in_set needs a set of dimension d");
    }
  }
}

namespace {

void fill_standard_normal(Rng& rng, Matrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = rng.normal();
  }
}

Vector uniform_row(Rng& rng, const FeasibleSet& set) {
  const auto d = static_cast<Eigen::Index>(set.dimension());
  Vector row(d);
  if (const auto* ball = dynamic_cast<const L2Ball*>(&set)) {
    for (Eigen::Index j = 0; j < d; ++j) row[j] = rng.normal();
    const double norm = row.norm();
    const double radius = ball->radius() * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
    return ball->center() + (norm > 0.0 ? radius / norm : 0.0) * row;
  }
  if (const auto* simplex = dynamic_cast<const Simplex*>(&set)) {
    for (Eigen::Index j = 0; j < d; ++j) row[j] = -std::log1p(-rng.uniform());
    return simplex->scale() * row / row.sum();
  }
  if (const auto* box = dynamic_cast<const LInfBall*>(&set)) {
    for (Eigen::Index j = 0; j < d; ++j) row[j] = box->radius() * (2.0 * rng.uniform() - 1.0);
    return box->center() + row;
  }
  throw std::invalid_argument("datagen: uniform row sampling supports l2ball, simplex, linf_ball");
}

Dataset draw_once(const DataGenConfig& config, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(config.n_samples);
  const auto d = static_cast<Eigen::Index>(config.n_features);
  Rng rng(seed);

  Dataset data;
  data.seed_used = seed;
  data.matrix_a.resize(n, d);
  if (config.rows == RowSampling::standard_normal) {
    fill_standard_normal(rng, data.matrix_a);
  } else {
    for (Eigen::Index i = 0; i < n; ++i) data.matrix_a.row(i) = uniform_row(rng, *config.row_set);
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    data.matrix_a.col(j) *= std::pow(config.scale_base, static_cast<double>(j));
  }

  data.x_sol.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) data.x_sol[j] = config.solution_scale * rng.normal();
  if (config.x_sol_override) data.x_sol = *config.x_sol_override;

  const Vector clean = data.matrix_a * data.x_sol;
  data.labels.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double noisy = clean[i] + config.noise_sigma * rng.normal();
    data.labels[i] = noisy >= 0.0 ? 1.0 : -1.0;
  }
  return data;
}

bool both_classes_present(const Vector& labels) {
  return labels.maxCoeff() > 0.0 && labels.minCoeff() < 0.0;
}

}  // namespace

Matrix standard_normal_matrix(std::uint64_t seed, std::size_t n, std::size_t d) {
  Rng rng(seed);
  Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  fill_standard_normal(rng, a);
  return a;
}

Dataset generate_logistic_dataset(const DataGenConfig& config) {
  config.validate();
  constexpr int kMaxRetries = 10;
  Dataset data = draw_once(config, config.seed);
  for (int attempt = 1; attempt <= kMaxRetries && !both_classes_present(data.labels);
       ++attempt) {
    data = draw_once(config, derive_seed(config.seed, static_cast<std::uint64_t>(attempt)));
  }
  return data;
}

void write_dataset_csv(const Dataset& data, std::ostream& out) {
  const Eigen::Index d = data.matrix_a.cols();
  for (Eigen::Index j = 0; j < d; ++j) out << 'f' << j << ',';
  out << "label\n";
  for (Eigen::Index i = 0; i < data.matrix_a.rows(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) out << format_double(data.matrix_a(i, j)) << ',';
    out << (data.labels[i] > 0 ? "1" : "-1") << '\n';
  }
}

// ---------------------------------------------------------------------------

std::string_view to_string(GridSetting setting) {
  switch (setting) {
    case GridSetting::l2ball_npoints: return "l2ball_npoints";
    case GridSetting::l2ball_dim: return "l2ball_dim";
    case GridSetting::simplex_dim: return "simplex_dim";
    case GridSetting::box_dim: return "box_dim";
  }
  return "unknown";
}

GridSetting parse_grid_setting(std::string_view name) {
  for (auto s : {GridSetting::l2ball_npoints, GridSetting::l2ball_dim, GridSetting::simplex_dim,
                 GridSetting::box_dim}) {
    if (name == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown setting '" + std::string(name) +
                              "' (expected l2ball_npoints, l2ball_dim, simplex_dim, box_dim)");
}

std::vector<std::size_t> default_sizes(GridSetting setting) {
  switch (setting) {
    case GridSetting::l2ball_npoints: return {100, 200, 400};
    case GridSetting::l2ball_dim: return {5, 10, 15};
    case GridSetting::simplex_dim: return {5, 10, 15};
    case GridSetting::box_dim: return {5, 10, 15};
  }
  return {};
}

std::vector<GridInstance> experiment_grid(GridSetting setting,
                                          const std::vector<std::size_t>& sizes,
                                          std::uint64_t master_seed,
                                          const GridDefaults& defaults) {
  if (sizes.empty()) throw std::invalid_argument("experiment_grid: no sizes given");
  std::vector<GridInstance> grid;
  grid.reserve(sizes.size());
  for (std::size_t index = 0; index < sizes.size(); ++index) {
    const std::size_t size = sizes[index];
    if (size < 1) throw std::invalid_argument("experiment_grid: sizes must be >= 1");

    DataGenConfig data;
    data.noise_sigma = defaults.noise_sigma;
    data.scale_base = defaults.scale_base;
    data.solution_scale = defaults.solution_scale;
    data.seed = derive_seed(master_seed,
                            static_cast<std::uint64_t>(setting) * 1000 + index);

    GridInstance inst;
    inst.setting = setting;
    switch (setting) {
      case GridSetting::l2ball_npoints:
        data.n_samples = size;
        data.n_features = defaults.fixed_features;
        break;
      case GridSetting::l2ball_dim:
      case GridSetting::simplex_dim:
      case GridSetting::box_dim:
        data.n_samples = defaults.fixed_samples;
        data.n_features = size;
        break;
    }
    const auto d = static_cast<Eigen::Index>(data.n_features);
    switch (setting) {
      case GridSetting::l2ball_npoints:
      case GridSetting::l2ball_dim:
        inst.set = std::make_shared<L2Ball>(Vector::Zero(d), defaults.ball_radius);
        break;
      case GridSetting::simplex_dim:
        inst.set = std::make_shared<Simplex>(data.n_features, defaults.simplex_scale);
        break;
      case GridSetting::box_dim:
        inst.set = std::make_shared<LInfBall>(Vector::Zero(d), defaults.box_radius);
        break;
    }
    inst.id = std::string(to_string(setting)) + "_n" + std::to_string(data.n_samples) + "_d" +
              std::to_string(data.n_features);
    inst.data = std::move(data);
    grid.push_back(std::move(inst));
  }
  return grid;
}

std::vector<GridInstance> default_grid(std::uint64_t master_seed, const GridDefaults& defaults) {
  std::vector<GridInstance> grid;
  for (auto s : {GridSetting::l2ball_npoints, GridSetting::l2ball_dim, GridSetting::simplex_dim,
                 GridSetting::box_dim}) {
    auto part = experiment_grid(s, default_sizes(s), master_seed, defaults);
    grid.insert(grid.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  }
  return grid;
}

}  // namespace l0l1fw
