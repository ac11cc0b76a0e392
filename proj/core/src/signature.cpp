#include <stdexcept>

#include "btcoh/orlik_solomon.hpp"

namespace btcoh {

SignatureForm::SignatureForm(const StratifiedArrangement& s)
    : stratum_of_(s.stratum), dimension_(static_cast<int>(s.stratum_count()) - 1) {}

SignatureForm::SignatureForm(std::vector<int> stratum_of, int dimension)
    : stratum_of_(std::move(stratum_of)), dimension_(dimension) {}

int SignatureForm::evaluate_strata(const std::vector<int>& strata, int dimension) {
  if (static_cast<int>(strata.size()) != dimension + 1) throw std::invalid_argument("degree mismatch");
  std::vector<bool> seen(strata.size(), false);
  for (int x : strata) {
    if (x < 0 || x > dimension || seen[static_cast<std::size_t>(x)]) return 0;
    seen[static_cast<std::size_t>(x)] = true;
  }
  int sign = 1;
  for (std::size_t i = 0; i < strata.size(); ++i)
    for (std::size_t j = i + 1; j < strata.size(); ++j)
      if (strata[i] > strata[j]) sign = -sign;
  return sign;
}

int SignatureForm::evaluate(const Word& w) const {
  std::vector<int> seq;
  for (std::size_t a : w) seq.push_back(stratum_of_.at(a));
  return evaluate_strata(seq, dimension_);
}

Rational SignatureForm::evaluate(const ExtElement& x) const {
  Rational total = 0;
  for (const auto& [m, c] : x.terms()) total += c * evaluate(m);
  return total;
}

}  // namespace btcoh
