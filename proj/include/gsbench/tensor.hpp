#pragma once

#include <cstddef>
#include <vector>

namespace gsbench {

/// Dense 4-index tensor of two-electron integrals (pq|rs) in chemist
/// notation. Storage is the full n^4 block; set_symmetric() writes the whole
/// 8-fold orbit so every stored quadruple satisfies the permutational symmetry.
class EriTensor {
 public:
  EriTensor() = default;
  explicit EriTensor(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}

  std::size_t dim() const noexcept { return n_; }

  double operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return data_[index(p, q, r, s)];
  }
  double& operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return data_[index(p, q, r, s)];
  }

  void set_symmetric(std::size_t p, std::size_t q, std::size_t r, std::size_t s, double v) {
    (*this)(p, q, r, s) = v;
    (*this)(q, p, r, s) = v;
    (*this)(p, q, s, r) = v;
    (*this)(q, p, s, r) = v;
    (*this)(r, s, p, q) = v;
    (*this)(s, r, p, q) = v;
    (*this)(r, s, q, p) = v;
    (*this)(s, r, q, p) = v;
  }

  /// Largest deviation from 8-fold symmetry over all stored quadruples.
  double symmetry_defect() const {
    double worst = 0.0;
    for (std::size_t p = 0; p < n_; ++p)
      for (std::size_t q = 0; q < n_; ++q)
        for (std::size_t r = 0; r < n_; ++r)
          for (std::size_t s = 0; s < n_; ++s) {
            const double v = (*this)(p, q, r, s);
            for (double w : {(*this)(q, p, r, s), (*this)(p, q, s, r), (*this)(r, s, p, q)}) {
              const double d = v > w ? v - w : w - v;
              if (d > worst) worst = d;
            }
          }
    return worst;
  }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  friend bool operator==(const EriTensor&, const EriTensor&) = default;

 private:
  std::size_t index(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return ((p * n_ + q) * n_ + r) * n_ + s;
  }

  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace gsbench
