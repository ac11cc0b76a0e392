#include "btcoh/matrix.hpp"

namespace btcoh {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::domain_error("matrix entry is not an integer");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

ExactMatrix::ExactMatrix(RingDescriptor ring, RatMatrix entries) : ring_(std::move(ring)), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.rows(); ++i)
    for (std::size_t j = 0; j < entries_.cols(); ++j) entries_(i, j) = ring_.reduce(entries_(i, j));
}

ExactMatrix::ExactMatrix(RingDescriptor ring, const IntMatrix& entries) : ExactMatrix(std::move(ring), to_rational(entries)) {}

IntMatrix ExactMatrix::integers() const {
  if (ring_.kind() == RingKind::Rationals) return to_integer(entries_);
  IntMatrix r(rows(), cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) r(i, j) = entries_(i, j).get_num();
  return r;
}

}  // namespace btcoh
