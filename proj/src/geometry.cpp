#include "cavrec/geometry.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>

namespace cavrec {

TrigPolynomial::TrigPolynomial(std::vector<double> c) : coeffs(std::move(c)) {
    if (coeffs.empty() || coeffs.size() % 2 == 0)
        throw std::invalid_argument("TrigPolynomial: need 2J+1 coefficients");
}

double TrigPolynomial::basis(int j, int degree, double s) {
    return j <= degree ? std::cos(j * s) : std::sin((j - degree) * s);
}

double TrigPolynomial::eval(double s) const {
    const int J = degree();
    double acc = 0.0;
    for (int j = 0; j <= J; ++j) acc += coeffs[j] * std::cos(j * s);
    for (int j = 1; j <= J; ++j) acc += coeffs[J + j] * std::sin(j * s);
    return acc;
}

double TrigPolynomial::deriv(double s) const {
    const int J = degree();
    double acc = 0.0;
    for (int j = 1; j <= J; ++j) acc += -j * coeffs[j] * std::sin(j * s);
    for (int j = 1; j <= J; ++j) acc += j * coeffs[J + j] * std::cos(j * s);
    return acc;
}

double TrigPolynomial::deriv2(double s) const {
    const int J = degree();
    double acc = 0.0;
    for (int j = 1; j <= J; ++j) acc += -j * j * coeffs[j] * std::cos(j * s);
    for (int j = 1; j <= J; ++j) acc += -j * j * coeffs[J + j] * std::sin(j * s);
    return acc;
}

double eval_trig(const TrigPolynomial& poly, double s) { return poly.eval(s); }

RadialCurve::RadialCurve(std::shared_ptr<const RadialProfile> profile, Vec2 center, int sign)
    : profile_(std::move(profile)), center_(center), sign_(sign) {
    if (!profile_) throw std::invalid_argument("RadialCurve: null profile");
    if (sign_ != 1 && sign_ != -1) throw std::invalid_argument("RadialCurve: sign must be +-1");
}

Vec2 RadialCurve::point(double s) const {
    const double r = profile_->value(s);
    return center_ + r * Vec2(std::cos(s), std::sin(s));
}

Vec2 RadialCurve::derivative(double s) const {
    const double r = profile_->value(s), dr = profile_->deriv(s);
    const double c = std::cos(s), sn = std::sin(s);
    return {dr * c - r * sn, dr * sn + r * c};
}

Vec2 RadialCurve::second_derivative(double s) const {
    const double r = profile_->value(s), dr = profile_->deriv(s), ddr = profile_->deriv2(s);
    const double c = std::cos(s), sn = std::sin(s);
    return {(ddr - r) * c - 2.0 * dr * sn, (ddr - r) * sn + 2.0 * dr * c};
}

Vec2 outward_normal(const Curve& curve, double s) {
    const Vec2 d = curve.derivative(s);
    const double len = d.norm();
    if (!(len > 1e-14)) throw std::domain_error("outward_normal: degenerate parametrization");
    return curve.outward_sign() * Vec2(d.y(), -d.x()) / len;
}

RadialCurve update_radial(const RadialCurve& curve, const TrigPolynomial& q,
                          int check_nodes, double min_radius) {
    const auto* trig = dynamic_cast<const TrigRadialProfile*>(&curve.profile());
    if (!trig) throw std::invalid_argument("update_radial: curve is not trig-radial");
    if (trig->poly().degree() != q.degree())
        throw std::invalid_argument("update_radial: degree mismatch");
    TrigPolynomial sum = trig->poly();
    for (std::size_t j = 0; j < sum.coeffs.size(); ++j) sum.coeffs[j] += q.coeffs[j];
    for (int i = 0; i < check_nodes; ++i) {
        const double s = 2.0 * M_PI * i / check_nodes;
        if (sum.eval(s) < min_radius)
            throw std::invalid_argument("update_radial: radius below floor");
    }
    return RadialCurve(std::make_shared<TrigRadialProfile>(std::move(sum)),
                       curve.center(), curve.outward_sign());
}

double damp_radial_step(const RadialCurve& curve, TrigPolynomial& q,
                        int check_nodes, double min_radius, int max_halvings) {
    const auto* trig = dynamic_cast<const TrigRadialProfile*>(&curve.profile());
    if (!trig) throw std::invalid_argument("damp_radial_step: curve is not trig-radial");
    double scale = 1.0;
    for (int h = 0; h <= max_halvings; ++h) {
        bool ok = true;
        for (int i = 0; i < check_nodes && ok; ++i) {
            const double s = 2.0 * M_PI * i / check_nodes;
            ok = trig->poly().eval(s) + scale * q.eval(s) >= min_radius;
        }
        if (ok) {
            for (auto& c : q.coeffs) c *= scale;
            return scale;
        }
        scale *= 0.5;
    }
    return 0.0;
}

namespace {

// r(s) = scale * (cos^10 s + sin^10 s)^(-1/10)
class RoundedRectangleProfile final : public RadialProfile {
public:
    explicit RoundedRectangleProfile(double scale) : scale_(scale) {}

    double value(double s) const override { return scale_ * std::pow(p(s), -0.1); }
    double deriv(double s) const override {
        return scale_ * -0.1 * std::pow(p(s), -1.1) * dp(s);
    }
    double deriv2(double s) const override {
        const double ps = p(s);
        return scale_ * -0.1 * (-1.1 * std::pow(ps, -2.1) * dp(s) * dp(s)
                                + std::pow(ps, -1.1) * ddp(s));
    }

private:
    static double p(double s) {
        return std::pow(std::cos(s), 10) + std::pow(std::sin(s), 10);
    }
    static double dp(double s) {
        const double c = std::cos(s), sn = std::sin(s);
        return 10.0 * (std::pow(sn, 9) * c - std::pow(c, 9) * sn);
    }
    static double ddp(double s) {
        const double c = std::cos(s), sn = std::sin(s);
        return 10.0 * (9.0 * std::pow(sn, 8) * c * c - std::pow(sn, 10)
                       + 9.0 * std::pow(c, 8) * sn * sn - std::pow(c, 10));
    }
    double scale_;
};

// Rational radial profile u(s)/v(s) with trig-polynomial numerator and
// denominator; covers both example-2 apple curves.
class RationalTrigProfile final : public RadialProfile {
public:
    RationalTrigProfile(TrigPolynomial num, TrigPolynomial den)
        : num_(std::move(num)), den_(std::move(den)) {}

    double value(double s) const override { return num_.eval(s) / den_.eval(s); }
    double deriv(double s) const override {
        const double u = num_.eval(s), du = num_.deriv(s);
        const double v = den_.eval(s), dv = den_.deriv(s);
        return (du * v - u * dv) / (v * v);
    }
    double deriv2(double s) const override {
        const double u = num_.eval(s), du = num_.deriv(s), ddu = num_.deriv2(s);
        const double v = den_.eval(s), dv = den_.deriv(s), ddv = den_.deriv2(s);
        return (ddu * v * v - u * ddv * v - 2.0 * dv * du * v + 2.0 * u * dv * dv) / (v * v * v);
    }

private:
    TrigPolynomial num_, den_;
};

TrigPolynomial trig(std::initializer_list<double> c) { return TrigPolynomial(std::vector<double>(c)); }

} // namespace

std::shared_ptr<const Curve> make_example_curve(ExampleCurve name, double circle_radius) {
    switch (name) {
    case ExampleCurve::rounded_rectangle:
        return std::make_shared<RadialCurve>(
            std::make_shared<RoundedRectangleProfile>(kRoundedRectangleScale), Vec2(0, 0), -1);
    case ExampleCurve::unit_circle:
        return std::make_shared<RadialCurve>(
            std::make_shared<TrigRadialProfile>(trig({1.0})), Vec2(0, 0), +1);
    case ExampleCurve::apple_inner:
        // r1(s) = (0.45 + 0.3 cos s - 0.1 sin 2s)/(1.2 + 0.9 cos s)
        return std::make_shared<RadialCurve>(
            std::make_shared<RationalTrigProfile>(trig({0.45, 0.3, 0.0, 0.0, -0.1}),
                                                  trig({1.2, 0.9, 0.0, 0.0, 0.0})),
            Vec2(0, 0), -1);
    case ExampleCurve::apple_outer:
        // x2(s) = (r2 cos s - 0.4, r2 sin s), r2 = (1 + 0.9 cos s + 0.1 sin 2s)/(0.8 + 0.6 cos s)
        return std::make_shared<RadialCurve>(
            std::make_shared<RationalTrigProfile>(trig({1.0, 0.9, 0.0, 0.0, 0.1}),
                                                  trig({0.8, 0.6, 0.0, 0.0, 0.0})),
            Vec2(-0.4, 0.0), +1);
    case ExampleCurve::circle: {
        TrigPolynomial c(0);
        c.coeffs[0] = circle_radius;
        return std::make_shared<RadialCurve>(std::make_shared<TrigRadialProfile>(c), Vec2(0, 0), +1);
    }
    }
    throw std::invalid_argument("make_example_curve: unknown curve");
}

std::vector<Vec2> sample_curve(const Curve& curve, int n) {
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = curve.point(2.0 * M_PI * i / n);
    return pts;
}

double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    auto directed = [](const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
        double worst = 0.0;
        for (const auto& x : p) {
            double best = std::numeric_limits<double>::max();
            for (const auto& y : q) best = std::min(best, (x - y).norm());
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

} // namespace cavrec
