#include "clarith/session.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace clarith {

namespace {

// The constant is calibrated on the smaller half of the samples and must
// cover the larger half with a little slack.
constexpr double kSlack = 1.25;

GrowthFit fit(const std::string& metric, const std::vector<Sample>& samples,
              std::uint64_t Sample::*field) {
  const std::size_t half = samples.size() / 2;
  for (unsigned k = 0; k <= 4; ++k) {
    auto ratio = [&](const Sample& s) {
      return static_cast<double>(s.*field) / std::pow(static_cast<double>(s.input_bits), k);
    };
    double c = 0;
    for (std::size_t i = 0; i < half; ++i) c = std::max(c, ratio(samples[i]));
    c = std::max(c * kSlack, 1e-12);
    bool ok = true;
    for (std::size_t i = half; i < samples.size() && ok; ++i) ok = ratio(samples[i]) <= c;
    if (ok) return {metric, k, c};
  }
  return {metric, std::nullopt, 0};
}

}  // namespace

std::vector<GrowthFit> fit_complexity(const std::vector<Sample>& samples) {
  if (samples.size() < 8) throw std::invalid_argument("need at least 8 samples, got " + std::to_string(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].input_bits == 0) throw std::invalid_argument("input lengths must be positive");
    if (i && samples[i].input_bits <= samples[i - 1].input_bits)
      throw std::invalid_argument("input lengths must be strictly increasing");
  }
  return {fit("time", samples, &Sample::time_steps), fit("space", samples, &Sample::space_peak),
          fit("amplitude", samples, &Sample::top_bits)};
}

std::string format_fit(const GrowthFit& g) {
  std::ostringstream out;
  out << g.metric << ": ";
  if (g.degree) out << "<= " << g.constant << " * n^" << *g.degree;
  else out << "super-polynomial at tested scale";
  return out.str();
}

}  // namespace clarith
