#include "selfless/scalar.hpp"

#include <cmath>
#include <limits>

namespace selfless {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

double GaussianRational::abs() const {
  if (is_zero()) return 0.0;
  const double r = std::sqrt(norm().get_d());
  return r > 0.0 ? r : std::numeric_limits<double>::denorm_min();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string to_string(const GaussianRational& z) {
  if (sgn(z.imag()) == 0) return z.real().get_str();
  std::string im = z.imag() == 1 ? "" : z.imag() == -1 ? "-" : z.imag().get_str();
  if (sgn(z.real()) == 0) return im + "i";
  if (sgn(z.imag()) > 0) im = "+" + im;
  return z.real().get_str() + im + "i";
}

}  // namespace selfless
