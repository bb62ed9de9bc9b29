#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace e2qes;

namespace {

TimeFunction random_tree(Sampler& s, int depth) {
  const TimeFunction t = TimeFunction::time();
  if (depth == 0) return s.uniform(0, 1) < 0.5 ? t : TimeFunction(std::round(s.uniform(-3, 3) * 8.0) / 8.0 + 0.25);
  const int pick = static_cast<int>(s.uniform(0, 9));
  const TimeFunction a = random_tree(s, depth - 1);
  switch (pick) {
    case 0: return a + random_tree(s, depth - 1);
    case 1: return a - random_tree(s, depth - 1);
    case 2: return a * random_tree(s, depth - 1);
    case 3: return a / (2.5 + cos(random_tree(s, depth - 1)));
    case 4: return sin(a);
    case 5: return cos(a);
    case 6: return exp(0.3 * sin(a));
    case 7: return -a;
    default: return pow(1.5 + sin(a), TimeFunction(2.0));
  }
}

}  // namespace

TEST(TimeFunction, EvaluatesElementaryFunctions) {
  const TimeFunction t = TimeFunction::time();
  EXPECT_DOUBLE_EQ((2.0 * t + 1.0)(3.0), 7.0);
  EXPECT_DOUBLE_EQ(sin(t)(0.4), std::sin(0.4));
  EXPECT_DOUBLE_EQ((tan(t) / cosh(t))(0.2), std::tan(0.2) / std::cosh(0.2));
  EXPECT_DOUBLE_EQ(pow(t, TimeFunction(3.0))(1.5), 3.375);
  EXPECT_DOUBLE_EQ(sqrt(exp(t))(2.0), std::exp(1.0));
}

TEST(TimeFunction, ConstantFolding) {
  const TimeFunction t = TimeFunction::time();
  EXPECT_TRUE((TimeFunction(2.0) * 3.0).is_constant());
  EXPECT_TRUE((0.0 * sin(t)).is_zero());
  EXPECT_TRUE(TimeFunction(5.0).derivative().is_zero());
  EXPECT_EQ((1.0 * t).to_string(), "t");
  EXPECT_THROW(t / TimeFunction(0.0), PreconditionError);
}

TEST(TimeFunction, SymbolicDerivatives) {
  const TimeFunction t = TimeFunction::time();
  const double x = 0.37;
  EXPECT_NEAR(sin(2.0 * t).derivative()(x), 2.0 * std::cos(2.0 * x), 1e-15);
  EXPECT_NEAR((1.0 / cos(t)).derivative()(x), std::sin(x) / (std::cos(x) * std::cos(x)), 1e-14);
  EXPECT_NEAR(tan(t).derivative()(x), 1.0 / (std::cos(x) * std::cos(x)), 1e-14);
  EXPECT_NEAR(pow(t, t).derivative()(x), std::pow(x, x) * (std::log(x) + 1.0), 1e-14);
  EXPECT_NEAR(tanh(t * t).derivative()(x), 2.0 * x / std::pow(std::cosh(x * x), 2), 1e-15);
}

TEST(TimeFunction, IntegralNodes) {
  const TimeFunction t = TimeFunction::time();
  const TimeFunction F = TimeFunction::integral(cos(t));
  EXPECT_NEAR(F(1.2), std::sin(1.2), 1e-10);
  EXPECT_NEAR(F(-0.7), std::sin(-0.7), 1e-10);
  EXPECT_NEAR(F.derivative()(0.5), std::cos(0.5), 1e-15);
  EXPECT_TRUE(TimeFunction::integral(TimeFunction(0.0)).is_zero());
}

TEST(ExpressionParser, Grammar) {
  EXPECT_DOUBLE_EQ(parse_time_function("1 + 2*3")(0.0), 7.0);
  EXPECT_DOUBLE_EQ(parse_time_function("2^3^2")(0.0), 512.0);
  EXPECT_DOUBLE_EQ(parse_time_function("-2^2")(0.0), -4.0);
  EXPECT_DOUBLE_EQ(parse_time_function("(1+t)/(2-t)")(0.5), 1.0);
  EXPECT_DOUBLE_EQ(parse_time_function("sin(pi/2)")(0.0), 1.0);
  EXPECT_DOUBLE_EQ(parse_time_function("1.5e-1 * t")(2.0), 0.3);
  EXPECT_DOUBLE_EQ(parse_time_function(" exp( t )")(1.0), std::exp(1.0));
  EXPECT_NEAR(parse_time_function("int(2*t)")(3.0), 9.0, 1e-10);
}

TEST(ExpressionParser, RejectsMalformedInput) {
  for (const char* bad : {"", "1 +", "sin t", "foo(t)", "(1", "1)", "t t", "2 / 0", "#", "x"})
    EXPECT_THROW(parse_time_function(bad), ParseError) << bad;
}

TEST(TimeFunctionProperties, PrintParseRoundTrip) {
  Sampler s(21);
  for (int trial = 0; trial < 200; ++trial) {
    const TimeFunction f = random_tree(s, 4);
    const TimeFunction g = parse_time_function(f.to_string());
    EXPECT_EQ(g.to_string(), f.to_string());
    for (double x : {-1.3, 0.0, 0.37, 2.5}) {
      const double a = f(x), b = g(x);
      if (std::isfinite(a)) EXPECT_EQ(a, b) << f.to_string() << " at " << x;
    }
  }
}

TEST(TimeFunctionProperties, DerivativeMatchesCentralDifference) {
  Sampler s(22);
  for (int trial = 0; trial < 200; ++trial) {
    const TimeFunction f = random_tree(s, 3);
    const TimeFunction df = f.derivative();
    for (double x : {-0.8, 0.3, 1.1}) {
      const double h = 1e-5;
      const double fd = central_difference([&](double y) { return f(y); }, x, h);
      const double scale = 1.0 + std::abs(f(x + h)) + std::abs(f(x - h));
      if (std::isfinite(fd) && scale < 1e6) EXPECT_NEAR(df(x), fd, 1e-6 * scale) << f.to_string() << " at " << x;
    }
  }
}

TEST(AdaptiveSimpson, PolynomialsAndReversedLimits) {
  EXPECT_NEAR(adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0), 4.0, 1e-12);
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::exp(x); }, 1.0, 0.0), 1.0 - std::exp(1.0), 1e-10);
  EXPECT_EQ(adaptive_simpson([](double) { return 1.0; }, 3.0, 3.0), 0.0);
}
