#include "dunkl/transform.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "dunkl/errors.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/parallel.hpp"

namespace dunkl {

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// out = (M_0 x M_1 x ... ) applied along each axis of the row-major tensor v.
std::vector<Complex> mode_products(std::vector<Complex> v, std::vector<std::size_t> dims,
                                   const std::vector<Eigen::MatrixXcd>& mats, bool adjoint) {
  for (std::size_t a = 0; a < mats.size(); ++a) {
    const Eigen::MatrixXcd& m = mats[a];
    const std::size_t n_in = adjoint ? m.rows() : m.cols();
    const std::size_t n_out = adjoint ? m.cols() : m.rows();
    std::size_t pre = 1, post = 1;
    for (std::size_t b = 0; b < a; ++b) pre *= dims[b];
    for (std::size_t b = a + 1; b < dims.size(); ++b) post *= dims[b];
    std::vector<Complex> out(pre * n_out * post);
    for (std::size_t p = 0; p < pre; ++p) {
      Eigen::Map<const RowMatrix> x(v.data() + p * n_in * post, n_in, post);
      Eigen::Map<RowMatrix> y(out.data() + p * n_out * post, n_out, post);
      if (adjoint) {
        y.noalias() = m.adjoint() * x;
      } else {
        y.noalias() = m * x;
      }
    }
    dims[a] = n_out;
    v = std::move(out);
  }
  return v;
}

std::vector<std::size_t> axis_sizes(const QuadratureGrid& g) {
  std::vector<std::size_t> dims;
  for (const auto& r : g.axes()) dims.push_back(r.size());
  return dims;
}

// Contracts the row-major tensor t with exp-kernel vectors, one point at a time.
std::vector<Complex> contract_points(const std::vector<Complex>& t, const QuadratureGrid& grid,
                                     const DunklParams& params, std::span<const double> points, double sign) {
  const int d = params.d;
  if (points.size() % d != 0) throw ShapeError("transform: point list length is not a multiple of d");
  const std::size_t count = points.size() / d;
  std::vector<ImaginaryKernel> kernels;
  for (int a = 0; a < d; ++a) kernels.emplace_back(params.k[a]);
  const auto dims = axis_sizes(grid);
  std::vector<Complex> out(count);
  if (d == 1) {
    // Compactly supported inputs (atoms) touch few nodes; skip the zeros.
    std::vector<std::size_t> live;
    for (std::size_t s = 0; s < t.size(); ++s)
      if (t[s] != Complex(0.0)) live.push_back(s);
    const auto& nodes = grid.axes()[0].nodes;
    parallel_for(count, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        Complex acc = 0.0;
        for (std::size_t s : live) {
          const Complex e = kernels[0].minus_i(points[i] * nodes[s]);
          acc += t[s] * (sign < 0 ? e : std::conj(e));
        }
        out[i] = acc;
      }
    });
    return out;
  }
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    std::vector<Complex> work;
    for (std::size_t i = begin; i < end; ++i) {
      work = t;
      std::size_t rest = work.size();
      for (int a = d - 1; a >= 0; --a) {
        const auto& nodes = grid.axes()[a].nodes;
        const std::size_t n = dims[a];
        rest /= n;
        Eigen::VectorXcd v(n);
        for (std::size_t s = 0; s < n; ++s) {
          const Complex e = kernels[a].minus_i(points[i * d + a] * nodes[s]);
          v(s) = sign < 0 ? e : std::conj(e);
        }
        Eigen::Map<const RowMatrix> x(work.data(), rest, n);
        Eigen::VectorXcd r = x * v;
        work.assign(r.data(), r.data() + rest);
      }
      out[i] = work[0];
    }
  });
  return out;
}

}  // namespace

TransformPlan::TransformPlan(DunklParams params, GridPtr source, GridPtr target)
    : params_(std::move(params)), source_(std::move(source)), target_(std::move(target)) {
  check_grids();
  build();
}

TransformPlan::TransformPlan(DunklParams params, GridPtr source, GridPtr target, NoBuild)
    : params_(std::move(params)), source_(std::move(source)), target_(std::move(target)) {
  check_grids();
}

void TransformPlan::check_grids() const {
  if (!source_ || !target_) throw ShapeError("TransformPlan: null grid");
  if (source_->dim() != params_.d || target_->dim() != params_.d)
    throw ShapeError("TransformPlan: grid dimension differs from d");
  if (source_->spec().k != params_.k || target_->spec().k != params_.k)
    throw ShapeError("TransformPlan: grids were built for other multiplicities");
  if (!source_->is_tensor() || !target_->is_tensor())
    throw ScopeError("TransformPlan: source and target must be tensor-product grids");
}

void TransformPlan::build() {
  axes_.clear();
  for (int a = 0; a < params_.d; ++a) {
    const auto& y = source_->axes()[a].nodes;
    const auto& xi = target_->axes()[a].nodes;
    const ImaginaryKernel kernel(params_.k[a]);
    Eigen::MatrixXcd m(xi.size(), y.size());
    parallel_for(xi.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t t = begin; t < end; ++t)
        for (std::size_t s = 0; s < y.size(); ++s) m(t, s) = kernel.minus_i(xi[t] * y[s]);
    });
    axes_.push_back(std::move(m));
  }
}

SampledFunction TransformPlan::forward(const SampledFunction& f) const {
  if (!f.grid() || f.grid()->fingerprint() != source_->fingerprint())
    throw ShapeError("forward: function is not sampled on the plan's source grid");
  std::vector<Complex> v(f.values().begin(), f.values().end());
  const auto& w = source_->weights();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= params_.mehta * w[i];
  return SampledFunction(target_, mode_products(std::move(v), axis_sizes(*source_), axes_, false));
}

SampledFunction TransformPlan::inverse(const SampledFunction& F) const {
  if (!F.grid() || F.grid()->fingerprint() != target_->fingerprint())
    throw ShapeError("inverse: function is not sampled on the plan's target grid");
  std::vector<Complex> v(F.values().begin(), F.values().end());
  const auto& w = target_->weights();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= params_.mehta * w[i];
  return SampledFunction(source_, mode_products(std::move(v), axis_sizes(*target_), axes_, true));
}

std::vector<Complex> TransformPlan::forward_at(const SampledFunction& f, std::span<const double> points) const {
  if (!f.grid() || f.grid()->fingerprint() != source_->fingerprint())
    throw ShapeError("forward_at: function is not sampled on the plan's source grid");
  std::vector<Complex> t(f.values().begin(), f.values().end());
  const auto& w = source_->weights();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] *= params_.mehta * w[i];
  return contract_points(t, *source_, params_, points, -1.0);
}

std::vector<Complex> TransformPlan::inverse_at(const SampledFunction& F, std::span<const double> points) const {
  if (!F.grid() || F.grid()->fingerprint() != target_->fingerprint())
    throw ShapeError("inverse_at: function is not sampled on the plan's target grid");
  std::vector<Complex> t(F.values().begin(), F.values().end());
  const auto& w = target_->weights();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] *= params_.mehta * w[i];
  return contract_points(t, *target_, params_, points, 1.0);
}

SampledFunction TransformPlan::apply_symbol(const SampledFunction& f, const std::vector<Complex>& symbol) const {
  SampledFunction F = forward(f);
  if (symbol.size() != F.size()) throw ShapeError("apply_symbol: symbol length differs from the target grid");
  auto& v = F.mutable_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= symbol[i];
  return inverse(F);
}

Eigen::MatrixXcd TransformPlan::dense_matrix() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(1, 1);
  for (const auto& a : axes_) {
    Eigen::MatrixXcd next(m.rows() * a.rows(), m.cols() * a.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        next.block(i * a.rows(), j * a.cols(), a.rows(), a.cols()) = m(i, j) * a;
    m = std::move(next);
  }
  const auto& w = source_->weights();
  for (Eigen::Index s = 0; s < m.cols(); ++s) m.col(s) *= params_.mehta * w[s];
  return m;
}

std::uint64_t TransformPlan::cache_key() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t d = params_.d;
  mix(&d, sizeof d);
  mix(params_.k.data(), params_.k.size() * sizeof(double));
  const std::uint64_t fs = source_->fingerprint();
  const std::uint64_t ft = target_->fingerprint();
  mix(&fs, sizeof fs);
  mix(&ft, sizeof ft);
  return h;
}

namespace {
constexpr char kMagic[8] = {'D', 'U', 'N', 'K', 'L', 'P', 'L', 'N'};
}

void TransformPlan::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("TransformPlan::save: cannot open " + path);
  const std::uint32_t version = plan_cache_version;
  const std::uint64_t key = cache_key();
  const std::uint32_t d = static_cast<std::uint32_t>(params_.d);
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&key), sizeof key);
  out.write(reinterpret_cast<const char*>(&d), sizeof d);
  for (const auto& m : axes_) {
    const std::uint64_t rows = m.rows(), cols = m.cols();
    out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
    out.write(reinterpret_cast<const char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(Complex)));
  }
  if (!out) throw Error("TransformPlan::save: write failed for " + path);
}

TransformPlan TransformPlan::load(const std::string& path, DunklParams params, GridPtr source, GridPtr target) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("plan cache: cannot open " + path, 0);
  TransformPlan plan(std::move(params), std::move(source), std::move(target), NoBuild{});
  char magic[8];
  std::uint32_t version = 0, d = 0;
  std::uint64_t key = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&key), sizeof key);
  in.read(reinterpret_cast<char*>(&d), sizeof d);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw ParseError("plan cache: bad header", 0);
  if (version != plan_cache_version)
    throw ParseError("plan cache: version " + std::to_string(version) + " is not supported", 0);
  if (key != plan.cache_key() || d != static_cast<std::uint32_t>(plan.params_.d))
    throw ParseError("plan cache: key does not match these parameters and grids", 0);
  for (std::uint32_t a = 0; a < d; ++a) {
    std::uint64_t rows = 0, cols = 0;
    in.read(reinterpret_cast<char*>(&rows), sizeof rows);
    in.read(reinterpret_cast<char*>(&cols), sizeof cols);
    if (!in || rows != plan.target_->axes()[a].size() || cols != plan.source_->axes()[a].size())
      throw ParseError("plan cache: axis shape mismatch", 0);
    Eigen::MatrixXcd m(rows, cols);
    in.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(Complex)));
    if (!in) throw ParseError("plan cache: truncated file", 0);
    plan.axes_.push_back(std::move(m));
  }
  return plan;
}

GridPtr default_target_grid(const DunklParams& params, const QuadratureGrid& source) {
  if (!source.is_tensor()) throw ScopeError("default_target_grid: source must be a tensor-product grid");
  const double n = static_cast<double>(source.axes()[0].size());
  const double half_width = source.extent();
  const double omega = 0.7 * n / half_width;
  const int npp = source.spec().nodes_per_panel;
  const int panels = std::max(1, static_cast<int>(std::lround(n / npp)));
  return QuadratureGrid::symmetric_box(params, omega, {panels, npp, 0.0});
}

namespace {

VerificationReport transform_report(const TransformPlan& plan, const char* suite) {
  VerificationReport r;
  r.suite = suite;
  r.d = plan.params().d;
  r.k = plan.params().k;
  return r;
}

}  // namespace

VerificationReport plancherel_check(const TransformPlan& plan, const SampledFunction& f) {
  VerificationReport r = transform_report(plan, "transform");
  const double nf = lp_norm(f, 2.0);
  const double nF = lp_norm(plan.forward(f), 2.0);
  const double dev = nf > 0.0 ? std::abs(nF - nf) / nf : std::abs(nF - nf);
  r.add_le("plancherel_deviation", dev, 0.0, 1e-4, nf > 0.0 ? "relative" : "absolute, f = 0");
  return r;
}

VerificationReport inversion_check(const TransformPlan& plan, const SampledFunction& f) {
  VerificationReport r = transform_report(plan, "transform");
  const SampledFunction back = plan.inverse(plan.forward(f));
  const double nf = lp_norm(f, 2.0);
  const double err = lp_norm(back - f, 2.0);
  r.add_le("inversion_error", nf > 0.0 ? err / nf : err, 0.0, 1e-4, nf > 0.0 ? "relative L2" : "absolute, f = 0");
  return r;
}

VerificationReport hlp_check(const TransformPlan& plan, const SampledFunction& f, double p) {
  if (!(p > 1.0 && p <= 2.0)) throw InvalidParameter("hlp_check: p must lie in (1, 2]");
  VerificationReport r = transform_report(plan, "transform");
  const double nf = lp_norm(f, p);
  if (nf == 0.0) {
    r.add_info("hlp_ratio", 0.0, "degenerate: f = 0");
    return r;
  }
  const SampledFunction F = plan.forward(f);
  const double D = plan.params().homogeneous_dimension();
  const auto& grid = *plan.target_grid();
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double norm2 = 0.0;
    for (double c : grid.node(i)) norm2 += c * c;
    const double radial = p == 2.0 ? 1.0 : std::pow(norm2, 0.5 * D * (p - 2.0));
    s += grid.weights()[i] * radial * std::pow(std::abs(F[i]), p);
  }
  const double ratio = std::pow(s, 1.0 / p) / nf;
  if (p == 2.0) {
    r.add_le("hlp_p2_deviation", std::abs(ratio - 1.0), 0.0, 1e-4, "p = 2 reduces to Plancherel");
  }
  r.add_info("hlp_ratio", ratio, "empirical constant at p = " + std::to_string(p));
  return r;
}

}  // namespace dunkl
