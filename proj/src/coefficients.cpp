#include "jscat/coefficients.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace jscat {

namespace {

using nlohmann::json;

void check_blocks(const std::vector<Block>& blocks, int dim, const char* name,
                  bool require_invertible, double inv_tol) {
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Block& x = blocks[k];
    if (x.rows() != dim || x.cols() != dim)
      throw validation_error(std::string(name) + " block " + std::to_string(k) +
                             " has inconsistent dimensions");
    if (!is_hermitian(x))
      throw validation_error(std::string(name) + " block " + std::to_string(k) +
                             " is not hermitian");
    if (require_invertible) {
      Eigen::JacobiSVD<Block> svd(x);
      const auto& sv = svd.singularValues();
      if (!(sv(sv.size() - 1) > inv_tol * std::max(1.0, sv(0))))
        throw validation_error(std::string(name) + " block " +
                               std::to_string(k) + " is numerically singular");
    }
  }
}

Block block_from_json(const json& j, int dim, const char* name) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dim) * dim)
    throw validation_error(std::string("instance: ") + name +
                           " block has wrong entry count");
  Block x(dim, dim);
  std::size_t k = 0;
  for (int r = 0; r < dim; ++r)
    for (int col = 0; col < dim; ++col, ++k) {
      const json& e = j[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw validation_error(std::string("instance: ") + name +
                               " entry is not an [re, im] pair");
      x(r, col) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  return x;
}

json block_to_json(const Block& x) {
  json j = json::array();
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      j.push_back(json::array({x(r, c).real(), x(r, c).imag()}));
  return j;
}

}  // namespace

Complex zhukovsky(Complex z) {
  if (z == Complex(0.0, 0.0))
    throw validation_error("zhukovsky: z must be nonzero");
  return z + Complex(1.0, 0.0) / z;
}

SpectralPoint zhukovsky_inverse(Complex lambda) {
  // Roots of z^2 - lambda z + 1 = 0 multiply to 1; compute the larger one
  // stably and invert it.
  const Complex s = std::sqrt(lambda * lambda - Complex(4.0, 0.0));
  const Complex r1 = (lambda + s) / 2.0;
  const Complex r2 = (lambda - s) / 2.0;
  Complex z;
  const double a1 = std::abs(r1);
  const double a2 = std::abs(r2);
  if (std::abs(a1 - a2) <= 1e-14 * std::max(1.0, std::max(a1, a2))) {
    // lambda on [-2, 2]: both roots on the unit circle; take Im z >= 0,
    // with the real tie lambda = +-2 resolved to z = +-1.
    z = (r1.imag() >= r2.imag()) ? r1 : r2;
    if (std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z.real())))
      z = Complex(z.real() >= 0.0 ? 1.0 : -1.0, 0.0);
  } else {
    const Complex big = (a1 > a2) ? r1 : r2;
    z = Complex(1.0, 0.0) / big;
  }
  SpectralPoint p{z, lambda};
  if (std::abs(zhukovsky(z) - lambda) > 1e-14 * std::max(1.0, std::abs(lambda)))
    throw numerical_error("zhukovsky_inverse: branch residual exceeds 1e-14");
  return p;
}

CoefficientData::CoefficientData(int dim, int n_min, int n_max,
                                 std::vector<Block> a, std::vector<Block> b,
                                 double inv_tol)
    : dim_(dim),
      n_min_(n_min),
      n_max_(n_max),
      inv_tol_(inv_tol),
      a_(std::move(a)),
      b_(std::move(b)),
      id_(Block::Identity(dim, dim)),
      zero_(Block::Zero(dim, dim)) {
  if (dim_ < 1) throw validation_error("dimension must be >= 1");
  if (n_max_ < n_min_) throw validation_error("empty support interval");
  const std::size_t width = static_cast<std::size_t>(n_max_ - n_min_ + 1);
  if (a_.size() != width + 1)
    throw validation_error("A-block count must equal support width + 1");
  if (b_.size() != width)
    throw validation_error("B-block count must equal support width");
  check_blocks(a_, dim_, "A", /*require_invertible=*/true, inv_tol_);
  check_blocks(b_, dim_, "B", /*require_invertible=*/false, inv_tol_);
}

const Block& CoefficientData::A(int n) const {
  if (n < n_min_ - 1 || n > n_max_) return id_;
  return a_[static_cast<std::size_t>(n - (n_min_ - 1))];
}

const Block& CoefficientData::B(int n) const {
  if (n < n_min_ || n > n_max_) return zero_;
  return b_[static_cast<std::size_t>(n - n_min_)];
}

CoefficientData free_instance(int dim) {
  std::vector<Block> a(2, Block::Identity(dim, dim));
  std::vector<Block> b(1, Block::Zero(dim, dim));
  return CoefficientData(dim, 0, 0, std::move(a), std::move(b));
}

CoefficientData parse_coefficients(const std::string& json_text,
                                   double inv_tol) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw validation_error(std::string("instance: JSON parse failure: ") +
                           e.what());
  }
  try {
    if (!j.is_object() || !j.contains("dim") || !j.contains("support") ||
        !j.contains("A") || !j.contains("B"))
      throw validation_error(
          "instance: object must contain dim, support, A, B");
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw validation_error("instance: dim must be >= 1");
    const auto& sup = j.at("support");
    if (!sup.is_array() || sup.size() != 2)
      throw validation_error("instance: support must be [n_min, n_max]");
    const int n_min = sup[0].get<int>();
    const int n_max = sup[1].get<int>();
    if (n_max < n_min) throw validation_error("instance: empty support");
    const std::size_t width = static_cast<std::size_t>(n_max - n_min + 1);
    const auto& ja = j.at("A");
    const auto& jb = j.at("B");
    if (!ja.is_array() || ja.size() != width + 1)
      throw validation_error("instance: A must hold support width + 1 blocks");
    if (!jb.is_array() || jb.size() != width)
      throw validation_error("instance: B must hold support width blocks");
    std::vector<Block> a;
    std::vector<Block> b;
    a.reserve(ja.size());
    b.reserve(jb.size());
    for (const auto& blk : ja) a.push_back(block_from_json(blk, dim, "A"));
    for (const auto& blk : jb) b.push_back(block_from_json(blk, dim, "B"));
    return CoefficientData(dim, n_min, n_max, std::move(a), std::move(b),
                           inv_tol);
  } catch (const json::exception& e) {
    throw validation_error(std::string("instance: malformed field: ") +
                           e.what());
  }
}

CoefficientData load_coefficients(const std::string& path, double inv_tol) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_coefficients(ss.str(), inv_tol);
}

std::string coefficients_to_json(const CoefficientData& c) {
  json j;
  j["dim"] = c.dim();
  j["support"] = json::array({c.support_min(), c.support_max()});
  json ja = json::array();
  for (int n = c.support_min() - 1; n <= c.support_max(); ++n)
    ja.push_back(block_to_json(c.A(n)));
  json jb = json::array();
  for (int n = c.support_min(); n <= c.support_max(); ++n)
    jb.push_back(block_to_json(c.B(n)));
  j["A"] = std::move(ja);
  j["B"] = std::move(jb);
  return j.dump(2);
}

void save_coefficients(const CoefficientData& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write instance file: " + path);
  out << coefficients_to_json(c) << "\n";
}

double moment_sum(const CoefficientData& c, int k) {
  if (k < 0) throw validation_error("moment_sum: k must be >= 0");
  const Block id = identity_block(c.dim());
  double sum = 0.0;
  for (int n = c.support_min() - 1; n <= c.support_max(); ++n) {
    const double dev = spectral_norm(id - c.A(n)) + spectral_norm(c.B(n));
    sum += std::pow(static_cast<double>(std::abs(n)), k) * dev;
  }
  return sum;
}

double exponential_budget(const CoefficientData& c, double eps) {
  const Block id = identity_block(c.dim());
  double sum = 0.0;
  for (int n = c.support_min() - 1; n <= c.support_max(); ++n) {
    const double dev = spectral_norm(id - c.A(n)) + spectral_norm(c.B(n));
    sum += std::exp(eps * std::abs(n)) * dev;
  }
  return sum;
}

double trace_norm_budget(const CoefficientData& c) {
  const Block id = identity_block(c.dim());
  double sum = 0.0;
  for (int n = c.support_min() - 1; n <= c.support_max(); ++n)
    sum += 2.0 * trace_norm(c.A(n) - id);
  for (int n = c.support_min(); n <= c.support_max(); ++n)
    sum += trace_norm(c.B(n));
  return sum;
}

Eigen::MatrixXcd truncated_matrix(const CoefficientData& c, int M) {
  const int bound = std::max(std::abs(c.support_min()), std::abs(c.support_max()));
  if (M < bound + 1)
    throw validation_error(
        "truncated_matrix: M must be >= max(|n_min|, |n_max|) + 1");
  const int d = c.dim();
  const int nblocks = 2 * M + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(nblocks) * d, static_cast<Eigen::Index>(nblocks) * d);
  for (int n = -M; n <= M; ++n) {
    const Eigen::Index r = static_cast<Eigen::Index>(n + M) * d;
    m.block(r, r, d, d) = c.B(n);
    if (n < M) {
      m.block(r, r + d, d, d) = c.A(n);
      m.block(r + d, r, d, d) = c.A(n).adjoint();
    }
  }
  return m;
}

}  // namespace jscat
