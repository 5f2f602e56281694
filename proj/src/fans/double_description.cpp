#include "toricdyn/fans/double_description.hpp"

#include <algorithm>

#include "toricdyn/lattice/smith.hpp"

namespace toricdyn::fans {

using lattice::dot;
using lattice::primitive;
using lattice::rank_of;

namespace {

LatticeVector combine(const BigInt& a, const LatticeVector& x, const BigInt& b, const LatticeVector& y) {
  LatticeVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] - b * y[i];
  return primitive(std::move(out));
}

class Builder {
 public:
  explicit Builder(std::size_t n) : n_(n) {
    for (std::size_t i = 0; i < n; ++i) {
      LatticeVector e(n);
      e[i] = 1;
      lineality_.push_back(std::move(e));
    }
  }

  void add(const LatticeVector& a, bool equation) {
    if (a.size() != n_) throw Error(ErrorKind::DimensionMismatch, "constraint length differs from ambient rank");
    if (lattice::is_zero(a)) return;

    auto hit = std::find_if(lineality_.begin(), lineality_.end(),
                            [&](const LatticeVector& l) { return dot(a, l) != 0; });
    if (hit != lineality_.end()) {
      LatticeVector l0 = *hit;
      lineality_.erase(hit);
      BigInt s = dot(a, l0);
      if (s < 0) {
        for (auto& x : l0) x = -x;
        s = -s;
      }
      for (auto& l : lineality_) {
        BigInt t = dot(a, l);
        if (t != 0) l = combine(s, l, t, l0);
      }
      for (auto& r : rays_) {
        BigInt t = dot(a, r);
        if (t != 0) r = combine(s, r, t, l0);
      }
      if (!equation) rays_.push_back(primitive(l0));
      processed_.push_back(a);
      return;
    }

    std::vector<LatticeVector> positive, negative, next;
    std::vector<BigInt> pos_val, neg_val;
    for (const auto& r : rays_) {
      BigInt t = dot(a, r);
      if (t == 0) {
        next.push_back(r);
      } else if (t > 0) {
        positive.push_back(r);
        pos_val.push_back(t);
      } else {
        negative.push_back(r);
        neg_val.push_back(t);
      }
    }
    if (!equation) next.insert(next.end(), positive.begin(), positive.end());

    const std::size_t target_rank = n_ - lineality_.size() - 2;
    for (std::size_t i = 0; i < positive.size(); ++i)
      for (std::size_t j = 0; j < negative.size(); ++j) {
        if (!adjacent(positive[i], negative[j], target_rank)) continue;
        // (a.p) q - (a.q) p lies on a.x = 0 and is a positive combination.
        next.push_back(combine(pos_val[i], negative[j], neg_val[j], positive[i]));
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rays_ = std::move(next);
    processed_.push_back(a);
  }

  DoubleDescription result() && {
    std::sort(rays_.begin(), rays_.end());
    return {std::move(lineality_), std::move(rays_)};
  }

 private:
  bool adjacent(const LatticeVector& p, const LatticeVector& q, std::size_t target_rank) const {
    std::vector<LatticeVector> tight;
    for (const auto& row : processed_)
      if (dot(row, p) == 0 && dot(row, q) == 0) tight.push_back(row);
    if (tight.size() < target_rank) return false;
    return rank_of(tight, n_) == target_rank;
  }

  std::size_t n_;
  std::vector<LatticeVector> lineality_;
  std::vector<LatticeVector> rays_;
  std::vector<LatticeVector> processed_;
};

}  // namespace

DoubleDescription double_description(const std::vector<LatticeVector>& inequalities,
                                     const std::vector<LatticeVector>& equations, std::size_t n) {
  Builder b(n);
  for (const auto& e : equations) b.add(e, true);
  for (const auto& a : inequalities) b.add(a, false);
  return std::move(b).result();
}

}  // namespace toricdyn::fans
