#pragma once

#include <map>
#include <string>

namespace edgeworth {

/// Registry of test functions f with closed-form derivatives up to order 5.
/// All members except monomial are bounded with bounded derivatives;
/// monomials are diagnostic-only (moment/cumulant checks).
class TestFunction {
public:
    static TestFunction cos_shifted(double a, double c);
    static TestFunction sin_scaled(double a);
    static TestFunction gauss_bump(double s);
    static TestFunction logistic();
    static TestFunction monomial(int degree);

    /// Resolve from a config id like "cos_shifted" with {"a":1,"c":1}.
    static TestFunction parse(const std::string& id,
                              const std::map<std::string, double>& params);

    double operator()(double z) const { return derivative(0, z); }
    double derivative(int order, double z) const;

    bool bounded() const { return kind_ != Kind::Monomial; }
    /// -1 for non-monomial members.
    int monomial_degree() const;
    const std::string& name() const { return name_; }

    enum class Kind { CosShifted, SinScaled, GaussBump, Logistic, Monomial };
    Kind kind() const { return kind_; }
    double param_a() const { return a_; }
    double param_c() const { return c_; }

private:
    TestFunction(Kind kind, double a, double c, std::string name);

    Kind kind_;
    double a_;  // frequency / scale / degree
    double c_;  // shift
    std::string name_;
};

inline constexpr int kMaxDerivativeOrder = 5;

}  // namespace edgeworth
