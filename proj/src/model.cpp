#include "miqubo/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace miqubo {

namespace {

constexpr double kSymmetryTolerance = 1e-8;

// Cholesky factorization with a relative pivot floor. An exactly singular
// input has a zero pivot that floating point can round to either side of 0,
// so pivots are required to clear a small fraction of the diagonal scale.
bool cholesky_pivots_positive(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  const double pivot_floor = 1e-12 * std::max(1.0, a.diagonal().maxCoeff());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double pivot = a(k, k) - l.row(k).head(k).squaredNorm();
    if (!(pivot > pivot_floor)) return false;
    l(k, k) = std::sqrt(pivot);
    for (Eigen::Index r = k + 1; r < n; ++r) {
      l(r, k) = (a(r, k) - l.row(r).head(k).dot(l.row(k).head(k))) / l(k, k);
    }
  }
  return true;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check_monomial(const Monomial& m, int n) {
  for (std::size_t t = 0; t < m.size(); ++t) {
    if (m[t] < 1 || m[t] > n) throw IndexOutOfRange("monomial index out of range");
    if (t > 0 && m[t] <= m[t - 1]) throw ValidationError("monomial indices must be sorted and duplicate-free");
  }
}

}  // namespace

SpinAssignment::SpinAssignment(std::vector<int> spins) : spins_(std::move(spins)) {
  for (int v : spins_) {
    if (v != 1 && v != -1) throw ValidationError("spin values must be +1 or -1");
  }
}

SpinAssignment SpinAssignment::from_bits(std::uint32_t bits, int n) {
  std::vector<int> spins(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) spins[i] = (bits >> i) & 1u ? 1 : -1;
  return SpinAssignment(std::move(spins));
}

int SpinAssignment::spin(int i) const {
  if (i < 1 || i > size()) throw IndexOutOfRange("spin index out of range");
  return spins_[static_cast<std::size_t>(i - 1)];
}

SpinAssignment SpinAssignment::flipped() const {
  std::vector<int> spins(spins_.size());
  std::transform(spins_.begin(), spins_.end(), spins.begin(), [](int v) { return -v; });
  return SpinAssignment(std::move(spins));
}

std::string SpinAssignment::to_string() const {
  std::string out = "[";
  for (int i = 0; i < size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(spins_[static_cast<std::size_t>(i)]);
  }
  return out + "]";
}

SensorSelection::SensorSelection(int n, std::vector<int> selected)
    : n_(n), selected_(std::move(selected)) {
  if (n_ < 0) throw ValidationError("selection requires n >= 0");
  std::sort(selected_.begin(), selected_.end());
  for (std::size_t t = 0; t < selected_.size(); ++t) {
    if (selected_[t] < 1 || selected_[t] > n_) throw IndexOutOfRange("selected sensor index out of range");
    if (t > 0 && selected_[t] == selected_[t - 1]) throw ValidationError("duplicate sensor in selection");
  }
}

SensorSelection SensorSelection::from_bits(std::uint32_t bits, int n) {
  std::vector<int> sel;
  for (int i = 0; i < n; ++i) {
    if ((bits >> i) & 1u) sel.push_back(i + 1);
  }
  return SensorSelection(n, std::move(sel));
}

std::vector<int> SensorSelection::complement() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n_) - selected_.size());
  for (int i = 1; i <= n_; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return out;
}

bool SensorSelection::contains(int i) const {
  return std::binary_search(selected_.begin(), selected_.end(), i);
}

SensorSelection SensorSelection::complemented() const { return SensorSelection(n_, complement()); }

SensorSelection SensorSelection::canonical() const {
  if (n_ >= 1 && !contains(1)) return complemented();
  return *this;
}

std::uint32_t SensorSelection::bits() const {
  std::uint32_t bits = 0;
  for (int i : selected_) bits |= 1u << (i - 1);
  return bits;
}

std::string SensorSelection::to_string() const {
  std::string out = "{";
  for (std::size_t t = 0; t < selected_.size(); ++t) {
    if (t > 0) out += ",";
    out += "S" + std::to_string(selected_[t]);
  }
  return out + "}";
}

double CovarianceMatrix::operator()(int i, int j) const {
  if (i < 1 || i > size() || j < 1 || j > size()) throw IndexOutOfRange("covariance index out of range");
  return sigma_(i - 1, j - 1);
}

Eigen::MatrixXd CovarianceMatrix::submatrix(const std::vector<int>& indices) const {
  Eigen::MatrixXd out(indices.size(), indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    for (std::size_t c = 0; c < indices.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          sigma_(indices[r] - 1, indices[c] - 1);
    }
  }
  return out;
}

MaskingMatrix MaskingMatrix::from_selection(const SensorSelection& sel) {
  const int n = sel.n();
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      k(i, j) = sel.contains(i + 1) == sel.contains(j + 1) ? 1.0 : 0.0;
    }
  }
  return MaskingMatrix(std::move(k));
}

double MaskingMatrix::operator()(int i, int j) const {
  if (i < 1 || i > size() || j < 1 || j > size()) throw IndexOutOfRange("masking index out of range");
  return k_(i - 1, j - 1);
}

SpinPolynomial::SpinPolynomial(int n, TermMap terms) : n_(n) {
  for (auto& [m, c] : terms) add_term(m, c);
}

double SpinPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void SpinPolynomial::add_term(Monomial m, double c) {
  check_monomial(m, n_);
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int SpinPolynomial::max_degree() const {
  int deg = 0;
  for (const auto& [m, c] : terms_) deg = std::max(deg, static_cast<int>(m.size()));
  return deg;
}

SpinPolynomial SpinPolynomial::negated() const {
  SpinPolynomial out(n_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

std::string SpinPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    const bool first = out.empty();
    const double mag = std::abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += format_number(mag);
    for (int i : m) out += "*s" + std::to_string(i);
  }
  return out;
}

double BooleanPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void BooleanPolynomial::add_term(Monomial m, double c) {
  check_monomial(m, num_variables());
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int BooleanPolynomial::max_degree() const {
  int deg = 0;
  for (const auto& [m, c] : terms_) deg = std::max(deg, static_cast<int>(m.size()));
  return deg;
}

int BooleanPolynomial::add_auxiliary(int i, int j) {
  if (i < 1 || j < 1 || i >= j || j > num_variables()) {
    throw ValidationError("auxiliary defining pair must name previously registered variables");
  }
  const int id = num_variables() + 1;
  aux_.push_back(AuxVariable{id, i, j});
  return id;
}

CovarianceMatrix validate_covariance(const Eigen::Ref<const Eigen::MatrixXd>& raw) {
  if (raw.rows() == 0 || raw.cols() == 0) throw EmptyMatrix("covariance matrix must be at least 1x1");
  if (raw.rows() != raw.cols()) throw DimensionMismatch("covariance matrix must be square");
  const Eigen::Index n = raw.rows();

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double gap = std::abs(raw(i, j) - raw(j, i));
      if (gap > kSymmetryTolerance * std::max(1.0, std::abs(raw(i, j)))) {
        throw AsymmetricMatrix("covariance entry (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ") breaks symmetry tolerance");
      }
    }
  }

  // Averaging keeps rounding-noise inputs symmetric and preserves PD.
  Eigen::MatrixXd sigma = (raw + raw.transpose()) / 2.0;

  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(sigma(i, i) > 0.0)) {
      throw NotPositiveDefinite("diagonal entry " + std::to_string(i + 1) + " is not positive");
    }
  }

  if (!cholesky_pivots_positive(sigma)) {
    throw NotPositiveDefinite("covariance matrix is not positive definite");
  }

  return CovarianceMatrix(std::move(sigma));
}

SensorSelection selection_from_spins(const SpinAssignment& s) {
  std::vector<int> sel;
  for (int i = 1; i <= s.size(); ++i) {
    if (s.spin(i) == 1) sel.push_back(i);
  }
  return SensorSelection(s.size(), std::move(sel));
}

SpinAssignment spins_from_selection(const SensorSelection& sel) {
  std::vector<int> spins(static_cast<std::size_t>(sel.n()));
  for (int i = 1; i <= sel.n(); ++i) spins[static_cast<std::size_t>(i - 1)] = sel.contains(i) ? 1 : -1;
  return SpinAssignment(std::move(spins));
}

double evaluate_polynomial(const SpinPolynomial& p, const SpinAssignment& s) {
  if (p.n() != s.size()) throw DimensionMismatch("polynomial and assignment sizes differ");
  double total = 0.0;
  for (const auto& [m, c] : p.terms()) {
    int sign = 1;
    for (int i : m) sign *= s.spin(i);
    total += sign * c;
  }
  return total;
}

double evaluate_boolean(const BooleanPolynomial& p, const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != p.num_variables()) {
    throw DimensionMismatch("boolean assignment length must match variable count");
  }
  double total = 0.0;
  for (const auto& [m, c] : p.terms()) {
    int prod = 1;
    for (int i : m) prod *= x[static_cast<std::size_t>(i - 1)];
    if (prod != 0) total += c;
  }
  return total;
}

}  // namespace miqubo
