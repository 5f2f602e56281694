#include "toricdyn/lattice/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace toricdyn::lattice {

RationalMatrix to_rational(const IntegerMatrix& a) {
  RationalMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
  return r;
}

IntegerMatrix power(const IntegerMatrix& a, unsigned exponent) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "power of a non-square matrix");
  IntegerMatrix result = IntegerMatrix::identity(a.rows());
  IntegerMatrix base = a;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

BigInt max_abs_entry(const IntegerMatrix& a) {
  BigInt best = 0;
  for (const auto& x : a.data()) {
    BigInt y = abs(x);
    if (y > best) best = y;
  }
  return best;
}

std::string to_string(const IntegerMatrix& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ", ";
      os << a(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IndexSet::IndexSet(std::vector<int> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] < 0) throw Error(ErrorKind::OutOfRange, "negative index in subset");
    if (i > 0 && elements_[i] <= elements_[i - 1])
      throw Error(ErrorKind::InvalidInput, "subset must be strictly increasing");
  }
}

bool IndexSet::contains(int i) const {
  return std::binary_search(elements_.begin(), elements_.end(), i);
}

IndexSet IndexSet::complement(int n) const {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (!contains(i)) out.push_back(i);
  return IndexSet(std::move(out));
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) os << ',';
    os << elements_[i] + 1;
  }
  os << '}';
  return os.str();
}

std::vector<IndexSet> k_subsets(int n, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || k > n) return out;
  std::vector<int> current(k);
  for (int i = 0; i < k; ++i) current[i] = i;
  while (true) {
    out.emplace_back(current);
    int i = k - 1;
    while (i >= 0 && current[i] == n - k + i) --i;
    if (i < 0) break;
    ++current[i];
    for (int j = i + 1; j < k; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

BigInt binomial(int n, int k) {
  BigInt r;
  if (k < 0 || k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace toricdyn::lattice
