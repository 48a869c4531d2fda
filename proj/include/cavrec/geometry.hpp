#pragma once

// 2pi-periodic parametric boundary curves with analytic first and second
// derivatives, the star-like radial representation x(s) = c + r(s)(cos s, sin s),
// trigonometric polynomials for the radial update, and the example curves.
//
// Orientation: outward_sign() fixes the unit normal as
//   nu(s) = sign * (x2'(s), -x1'(s)) / |x'(s)|.
// For a counterclockwise curve sign=+1 points away from the enclosed region;
// the interior boundary of the annulus uses sign=-1 so nu points into the
// cavity (outward with respect to the solution domain).

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cavrec {

using Vec2 = Eigen::Vector2d;

struct TrigPolynomial {
    // coeffs[j], j = 0..2J with basis cos(j s) for j <= J, sin((j-J) s) above.
    std::vector<double> coeffs;

    TrigPolynomial() = default;
    explicit TrigPolynomial(int degree) : coeffs(2 * degree + 1, 0.0) {}
    explicit TrigPolynomial(std::vector<double> c);

    int degree() const { return (static_cast<int>(coeffs.size()) - 1) / 2; }
    double eval(double s) const;
    double deriv(double s) const;
    double deriv2(double s) const;

    static double basis(int j, int degree, double s);
};

class RadialProfile {
public:
    virtual ~RadialProfile() = default;
    virtual double value(double s) const = 0;
    virtual double deriv(double s) const = 0;
    virtual double deriv2(double s) const = 0;
};

class TrigRadialProfile final : public RadialProfile {
public:
    explicit TrigRadialProfile(TrigPolynomial poly) : poly_(std::move(poly)) {}
    double value(double s) const override { return poly_.eval(s); }
    double deriv(double s) const override { return poly_.deriv(s); }
    double deriv2(double s) const override { return poly_.deriv2(s); }
    const TrigPolynomial& poly() const { return poly_; }

private:
    TrigPolynomial poly_;
};

class Curve {
public:
    virtual ~Curve() = default;
    virtual Vec2 point(double s) const = 0;
    virtual Vec2 derivative(double s) const = 0;
    virtual Vec2 second_derivative(double s) const = 0;
    virtual int outward_sign() const = 0;

    double speed(double s) const { return derivative(s).norm(); }
};

class RadialCurve final : public Curve {
public:
    RadialCurve(std::shared_ptr<const RadialProfile> profile, Vec2 center, int sign);

    Vec2 point(double s) const override;
    Vec2 derivative(double s) const override;
    Vec2 second_derivative(double s) const override;
    int outward_sign() const override { return sign_; }

    const RadialProfile& profile() const { return *profile_; }
    std::shared_ptr<const RadialProfile> profile_ptr() const { return profile_; }
    Vec2 center() const { return center_; }
    double radius(double s) const { return profile_->value(s); }

private:
    std::shared_ptr<const RadialProfile> profile_;
    Vec2 center_;
    int sign_;
};

Vec2 outward_normal(const Curve& curve, double s);

double eval_trig(const TrigPolynomial& poly, double s);

// New curve with radial function r(s) + q(s); throws std::invalid_argument
// if the radius drops below min_radius at any of the check nodes.
RadialCurve update_radial(const RadialCurve& curve, const TrigPolynomial& q,
                          int check_nodes = 256, double min_radius = 0.05);

// Bisection damping: scales q by 1/2 (up to max_halvings) until the update
// keeps the radius above min_radius. Returns the applied scale, 0 on failure.
double damp_radial_step(const RadialCurve& curve, TrigPolynomial& q,
                        int check_nodes = 256, double min_radius = 0.05,
                        int max_halvings = 20);

enum class ExampleCurve {
    rounded_rectangle,   // example 1 interior
    unit_circle,         // example 1 exterior
    apple_inner,         // example 2 interior
    apple_outer,         // example 2 exterior
    circle,              // circle of given radius at the origin
};

// Interior curves carry outward_sign -1, exterior ones +1.
std::shared_ptr<const Curve> make_example_curve(ExampleCurve name, double circle_radius = 1.0);

// Scale applied to the printed Example-1 rounded rectangle so it fits
// strictly inside the unit-circle exterior boundary.
constexpr double kRoundedRectangleScale = 0.5;

// Discrete Hausdorff distance between two sampled curves.
double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

std::vector<Vec2> sample_curve(const Curve& curve, int n);

} // namespace cavrec
