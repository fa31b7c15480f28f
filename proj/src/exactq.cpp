#include "ellcoh/exactq.hpp"

#include <sstream>

namespace ellcoh {

std::string to_string(const BettiVector& b) {
  std::ostringstream out;
  out << '(';
  const auto t = b.trimmed();
  for (std::size_t k = 0; k < t.dims.size(); ++k) out << (k ? ", " : "") << t.dims[k];
  out << ')';
  return out.str();
}

BettiVector direct_sum(const BettiVector& a, const BettiVector& b) {
  if (a.field != b.field)
    throw Error(ErrorCode::FieldMismatch,
                std::string("cannot add ") + to_string(a.field) + " and " + to_string(b.field) + " dimensions");
  const int length = std::max(a.support_end(), b.support_end());
  std::vector<Dim> out(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k) out[static_cast<std::size_t>(k)] = a[k] + b[k];
  return {std::move(out), a.field};
}

BettiVector shift(const BettiVector& a, int s) {
  const int end = a.support_end();
  if (end == 0) return {{}, a.field};
  for (int k = 0; k < end; ++k) {
    if (a[k] != 0 && k + s < 0)
      throw Error(ErrorCode::NegativeDegree, "shift by " + std::to_string(s) + " moves degree " +
                                                 std::to_string(k) + " below zero");
  }
  std::vector<Dim> out(static_cast<std::size_t>(std::max(end + s, 0)), 0);
  for (int k = std::max(0, -s); k < end; ++k) out[static_cast<std::size_t>(k + s)] = a[k];
  return {std::move(out), a.field};
}

BettiVector scale(const BettiVector& a, Dim factor) {
  BettiVector out = a.trimmed();
  for (auto& d : out.dims) d *= factor;
  return out;
}

BettiVector tensor(const BettiVector& a, const BettiVector& b) {
  if (a.field != b.field)
    throw Error(ErrorCode::FieldMismatch, "Kunneth product of mismatched fields");
  const int ea = a.support_end();
  const int eb = b.support_end();
  if (ea == 0 || eb == 0) return {{}, a.field};
  std::vector<Dim> out(static_cast<std::size_t>(ea + eb - 1), 0);
  for (int i = 0; i < ea; ++i)
    for (int j = 0; j < eb; ++j) out[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  return {std::move(out), a.field};
}

Dim euler_char(const BettiVector& a) {
  Dim chi = 0;
  for (std::size_t k = 0; k < a.dims.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * a.dims[k];
  return chi;
}

Dim binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Dim result = 1;
  for (int j = 1; j <= k; ++j) result = result * (n - k + j) / j;
  return result;
}

BettiVector torus_betti(int n, FieldTag field) {
  std::vector<Dim> out(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) out[static_cast<std::size_t>(k)] = binomial(n, k);
  return {std::move(out), field};
}

}  // namespace ellcoh
