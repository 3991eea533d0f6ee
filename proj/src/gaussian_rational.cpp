#include "mcmdeg/gaussian_rational.hpp"

#include "mcmdeg/errors.hpp"

namespace mcmdeg {

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw Error("division by zero in Q(i)");
  mpq_class norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  return *this *= o.inverse();
}

namespace {

std::string q_to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return q_to_string(re_);
  std::string imag;
  mpq_class mag = abs(im_);
  imag = (mag == 1) ? "i" : q_to_string(mag) + "*i";
  if (sgn(re_) == 0) return sgn(im_) < 0 ? "-" + imag : imag;
  return "(" + q_to_string(re_) + (sgn(im_) < 0 ? " - " : " + ") + imag + ")";
}

std::size_t GaussianRational::hash() const {
  std::hash<std::string> h;
  return h(re_.get_str()) * 31 + h(im_.get_str());
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& c) { return os << c.to_string(); }

}  // namespace mcmdeg
