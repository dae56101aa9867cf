#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>

namespace layerforge {

// Value, gradient and symmetric Hessian of a scalar field at a point of the plane.
struct Jet2 {
  double v = 0.0;
  std::array<double, 2> g{0.0, 0.0};
  // hess[0]=d11, hess[1]=d12 (=d21), hess[2]=d22
  std::array<double, 3> h{0.0, 0.0, 0.0};

  Jet2 operator+(const Jet2& o) const;
  Jet2 operator-(const Jet2& o) const;
  Jet2 operator*(const Jet2& o) const;
  Jet2 operator/(const Jet2& o) const;
  Jet2 operator-() const;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail { struct Node; }

// Closed-form scalar field on the plane in the variables y1, y2.
// Immutable after parsing; evaluation is pure.
class Expression {
 public:
  Expression() = default;

  double eval(double y1, double y2) const;
  Jet2 eval_jet(double y1, double y2) const;
  std::string pretty() const;
  bool same_tree(const Expression& o) const;
  explicit operator bool() const { return root_ != nullptr; }

  static Expression constant(double c);

  friend Expression parse(const std::string& source);

 private:
  std::shared_ptr<const detail::Node> root_;
};

// Parses +, -, *, /, ^, unary minus, sin, cos, exp, log, sqrt, tanh, numeric
// literals and the variables y1, y2. Throws ParseError with a byte offset.
Expression parse(const std::string& source);

// Directional jet data of a field along a (possibly non-unit) direction d:
// value, first and second directional derivatives.
struct DirectionalJet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

DirectionalJet directional_jet(const Expression& e, double y1, double y2,
                               double d1, double d2);

}  // namespace layerforge
