#include "ellcoh/local_model.hpp"

#include <bit>
#include <sstream>

namespace ellcoh::local {

namespace {

void check_chart_number(int l) {
  if (l < 0) throw Error(ErrorCode::DimensionMismatch, "chart number must be >= 0");
  if (l > kMaxChartNumber)
    throw Error(ErrorCode::BoundExceeded, "chart number " + std::to_string(l) + " exceeds " +
                                              std::to_string(kMaxChartNumber));
}

// Sign of S ^ T for disjoint monomials: one transposition per pair s > t.
int wedge_sign(Monomial s, Monomial t) {
  int inversions = 0;
  for (Monomial rest = t; rest != 0; rest &= rest - 1) {
    const int pos = std::countr_zero(rest);
    const Monomial above = pos + 1 >= 32 ? 0u : ~((Monomial{1} << (pos + 1)) - 1);
    inversions += std::popcount(s & above);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

void validate_multi_index(const MultiIndex& J, int l) {
  if (J.empty()) throw Error(ErrorCode::BadMultiIndex, "multi-index must be nonempty");
  for (std::size_t k = 0; k < J.size(); ++k) {
    if (J[k] < 1 || J[k] > l)
      throw Error(ErrorCode::BadMultiIndex, "index " + std::to_string(J[k]) + " outside 1.." + std::to_string(l));
    if (k > 0 && J[k] <= J[k - 1])
      throw Error(ErrorCode::BadMultiIndex, "multi-index must be strictly increasing");
  }
}

}  // namespace

int popcount(Monomial m) { return std::popcount(m); }

Monomial bit(Generator g, int l) {
  if (g.index < 1 || g.index > l)
    throw Error(ErrorCode::BadMultiIndex, "generator index " + std::to_string(g.index) + " outside 1.." +
                                              std::to_string(l));
  const int offset = g.kind == GeneratorKind::LogR ? 0 : l;
  return Monomial{1} << (offset + g.index - 1);
}

Monomial log_r_mask(int l) { return (Monomial{1} << l) - 1; }
Monomial theta_mask(int l) { return log_r_mask(l) << l; }

Monomial log_r_mask(const MultiIndex& J) {
  Monomial m = 0;
  for (int j : J) m |= Monomial{1} << (j - 1);
  return m;
}

MultiVectorForm::MultiVectorForm(int l) : l_(l) { check_chart_number(l); }

MultiVectorForm MultiVectorForm::one(int l) { return monomial(l, 0); }

MultiVectorForm MultiVectorForm::generator(int l, Generator g) { return monomial(l, bit(g, l)); }

MultiVectorForm MultiVectorForm::monomial(int l, Monomial m, const Rational& coefficient) {
  MultiVectorForm f(l);
  if ((m & ~(log_r_mask(l) | theta_mask(l))) != 0)
    throw Error(ErrorCode::DimensionMismatch, "monomial uses generators outside the chart");
  f.add_term(m, coefficient);
  return f;
}

bool MultiVectorForm::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = std::popcount(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (std::popcount(m) != d) return false;
  return true;
}

int MultiVectorForm::degree() const {
  if (terms_.empty()) return -1;
  if (!is_homogeneous()) throw Error(ErrorCode::DimensionMismatch, "form is not homogeneous");
  return std::popcount(terms_.begin()->first);
}

Rational MultiVectorForm::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiVectorForm::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiVectorForm& MultiVectorForm::operator+=(const MultiVectorForm& other) {
  if (other.l_ != l_) throw Error(ErrorCode::DimensionMismatch, "adding forms on different charts");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MultiVectorForm& MultiVectorForm::operator-=(const MultiVectorForm& other) {
  if (other.l_ != l_) throw Error(ErrorCode::DimensionMismatch, "subtracting forms on different charts");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

MultiVectorForm& MultiVectorForm::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

std::string to_string(const MultiVectorForm& f) {
  if (f.is_zero()) return "0";
  const int l = f.chart_number();
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    out << (first ? "" : " + ") << c;
    first = false;
    for (int j = 0; j < 2 * l; ++j) {
      if (m & (Monomial{1} << j)) out << (j < l ? " l" : " t") << (j % l) + 1;
    }
  }
  return out.str();
}

MultiVectorForm wedge(const MultiVectorForm& a, const MultiVectorForm& b) {
  if (a.chart_number() != b.chart_number())
    throw Error(ErrorCode::DimensionMismatch, "wedge of forms on different charts");
  MultiVectorForm out(a.chart_number());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      const Rational coeff = ca * cb;
      out.add_term(ma | mb, wedge_sign(ma, mb) == 1 ? coeff : Rational(-coeff));
    }
  }
  return out;
}

MultiVectorForm radial_residue(const MultiVectorForm& a, const MultiIndex& J) {
  const int l = a.chart_number();
  validate_multi_index(J, l);
  const Monomial jmask = log_r_mask(J);
  MultiVectorForm out(l);
  for (const auto& [m, c] : a.terms()) {
    if ((m & jmask) != jmask) continue;
    const Monomial rest = m & ~jmask;
    // m = sign * (dlog r_J wedge rest)
    const int sign = wedge_sign(jmask, rest);
    out.add_term(rest, sign == 1 ? c : Rational(-c));
  }
  return out;
}

const MultiVectorForm& DecompositionImage::piece(Monomial J) const {
  auto it = pieces.find(J);
  if (it == pieces.end()) throw Error(ErrorCode::BadMultiIndex, "no such piece");
  return it->second;
}

DecompositionImage decomposition_map(const MultiVectorForm& a) {
  const int l = a.chart_number();
  DecompositionImage image;
  image.l = l;
  const Monomial logs = log_r_mask(l);
  for (Monomial J = 0; J <= logs; ++J) image.pieces.emplace(J, MultiVectorForm(l));

  // Piece 0 is the restriction to the complement: monomials free of LOG_R.
  for (const auto& [m, c] : a.terms())
    if ((m & logs) == 0) image.pieces.at(0).add_term(m, c);

  // Piece J is the radial residue along J, restricted to the stratum, where
  // any leftover LOG_R generator vanishes.
  for (Monomial J = 1; J <= logs; ++J) {
    MultiIndex index;
    for (int j = 0; j < l; ++j)
      if (J & (Monomial{1} << j)) index.push_back(j + 1);
    const auto residue = radial_residue(a, index);
    for (const auto& [m, c] : residue.terms())
      if ((m & logs) == 0) image.pieces.at(J).add_term(m, c);
  }
  return image;
}

BettiVector DecompositionTarget::piece_betti(Monomial J) const {
  return shift(torus_betti(l), popcount(J));
}

BettiVector DecompositionTarget::total_betti() const {
  BettiVector total;
  for (Monomial J : pieces) total = direct_sum(total, piece_betti(J));
  return total;
}

DecompositionTarget decomposition_target(int l) {
  check_chart_number(l);
  DecompositionTarget t;
  t.l = l;
  for (int size = 0; size <= l; ++size)
    for (Monomial J = 0; J <= log_r_mask(l); ++J)
      if (popcount(J) == size) t.pieces.push_back(J);
  return t;
}

std::vector<Monomial> degree_basis(int l, int k) {
  check_chart_number(l);
  std::vector<Monomial> basis;
  const Monomial all = log_r_mask(l) | theta_mask(l);
  for (Monomial m = 0; m <= all; ++m)
    if (popcount(m) == k) basis.push_back(m);
  return basis;
}

RationalComplex build_local_complex(int l) {
  check_chart_number(l);
  std::vector<Dim> dims;
  for (int k = 0; k <= 2 * l; ++k) dims.push_back(binomial(2 * l, k));
  return RationalComplex::zero_differential(0, std::move(dims));
}

RationalMatrix decomposition_matrix(int l, int k) {
  const auto target = decomposition_target(l);
  const auto lhs = degree_basis(l, k);

  // (piece, theta monomial) -> row
  std::map<std::pair<Monomial, Monomial>, Eigen::Index> row_of;
  Eigen::Index rows = 0;
  for (Monomial J : target.pieces) {
    const int d = k - popcount(J);
    if (d < 0) continue;
    for (Monomial m = 0; m <= theta_mask(l); m += (Monomial{1} << l)) {
      if ((m & ~theta_mask(l)) == 0 && popcount(m) == d) row_of.emplace(std::pair{J, m}, rows++);
    }
  }

  RationalMatrix matrix = RationalMatrix::Zero(rows, static_cast<Eigen::Index>(lhs.size()));
  for (std::size_t col = 0; col < lhs.size(); ++col) {
    const auto image = decomposition_map(MultiVectorForm::monomial(l, lhs[col]));
    for (const auto& [J, piece] : image.pieces) {
      for (const auto& [m, c] : piece.terms()) matrix(row_of.at({J, m}), static_cast<Eigen::Index>(col)) = c;
    }
  }
  return matrix;
}

BettiVector LocalIsomorphismReport::lhs_betti() const {
  std::vector<Dim> d;
  for (const auto& v : degrees) d.push_back(v.lhs_dim);
  return {d};
}

BettiVector LocalIsomorphismReport::rhs_betti() const {
  std::vector<Dim> d;
  for (const auto& v : degrees) d.push_back(v.rhs_dim);
  return {d};
}

LocalIsomorphismReport verify_local_isomorphism(int l, int bound) {
  if (l < 0) throw Error(ErrorCode::DimensionMismatch, "chart number must be >= 0");
  if (l > bound)
    throw Error(ErrorCode::BoundExceeded, "l = " + std::to_string(l) + " above bound " + std::to_string(bound));
  check_chart_number(l);

  LocalIsomorphismReport report;
  report.l = l;
  report.injective = true;
  report.surjective = true;
  for (int k = 0; k <= 2 * l; ++k) {
    const RationalMatrix m = decomposition_matrix(l, k);
    DegreeVerdict v;
    v.degree = k;
    v.lhs_dim = m.cols();
    v.rhs_dim = m.rows();
    v.rank = static_cast<Dim>(rank(m));
    v.injective = v.rank == v.lhs_dim;
    v.surjective = v.rank == v.rhs_dim;
    report.injective = report.injective && v.injective;
    report.surjective = report.surjective && v.surjective;
    report.degrees.push_back(v);
  }
  return report;
}

}  // namespace ellcoh::local
