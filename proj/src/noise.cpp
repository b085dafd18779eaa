#include "nql/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nql {

static void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": value must be in [0, 1]");
  }
}

double f_lambda(double lambda) {
  require_unit_interval(lambda, "f_lambda");
  return 1.0 - lambda + 0.5 * lambda * lambda;
}

double pauli_damping(const PauliString& p, double lambda) {
  require_unit_interval(lambda, "pauli_damping");
  return std::pow(1.0 - lambda, weight(p));
}

DenseOp h_lambda_op(double lambda) {
  require_unit_interval(lambda, "h_lambda_op");
  const double a = 2.0 * lambda * (1.0 - lambda);
  const double b = 2.0 * (1.0 - lambda) * (1.0 - lambda);
  DenseOp h = swap_op(1);
  h.op *= b;
  h.op.diagonal().array() += a;
  return h;
}

std::string render_noise_model(const NoiseModel& m) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "lambda = %.17g\nerasure_rate = %.17g\n", m.lambda,
                m.erasure_rate);
  return buf;
}

NoiseModel parse_noise_model(const std::string& text) {
  NoiseModel m;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const double value = std::stod(trim(line.substr(eq + 1)));
    if (key == "lambda") {
      m.lambda = value;
    } else if (key == "erasure_rate") {
      m.erasure_rate = value;
    } else {
      throw std::invalid_argument("parse_noise_model: unknown key '" + key + "'");
    }
  }
  require_unit_interval(m.lambda, "parse_noise_model: lambda");
  require_unit_interval(m.erasure_rate, "parse_noise_model: erasure_rate");
  return m;
}

std::vector<uint8_t> erasure_mask(size_t n_legs, double rate, Rng& rng) {
  require_unit_interval(rate, "erasure_mask");
  std::vector<uint8_t> mask(n_legs, 0);
  for (size_t i = 0; i < n_legs; ++i) mask[i] = rng.bernoulli(rate) ? 1 : 0;
  return mask;
}

}  // namespace nql
