#pragma once

namespace alphasun {

// Compensated accumulator built on Knuth's branch-free TwoSum, so it is
// valid for complex<T> as well (the correction applies componentwise).
template <class T>
class Kahan {
 public:
  void add(T x) {
    T s = sum_ + x;
    T xv = s - sum_;
    T sv = s - xv;
    comp_ += (sum_ - sv) + (x - xv);
    sum_ = s;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

}  // namespace alphasun
