#include "neurodyn/phase.hpp"

#include <array>
#include <cmath>

#include "neurodyn/ode.hpp"
#include "neurodyn/specfn.hpp"

namespace neurodyn::phase {

const char* to_string(Region r) {
  switch (r) {
    case Region::Frozen: return "frozen";
    case Region::Dies: return "dies";
    case Region::ConvergesToZero: return "converges_to_zero";
    case Region::Solves: return "solves";
  }
  return "?";
}

const char* to_string(Fate f) {
  switch (f) {
    case Fate::Frozen: return "frozen";
    case Fate::Dies: return "dies";
    case Fate::ConvergesToZero: return "converges_to_zero";
    case Fate::Solves: return "solves";
    case Fate::Undecided: return "undecided";
  }
  return "?";
}

PhaseRegion classify(double y0, double z0, double norm) {
  if (!(norm > 0.0)) throw std::domain_error("classify: norm must be > 0");

  Boundary boundary = Boundary::None;
  const double scale = std::abs(y0) + norm * std::abs(z0);
  if (scale > 0.0) {
    if (std::abs(y0 - norm * z0) <= 1e-12 * scale) {
      boundary = Boundary::OnAsymptotePositive;
    } else if (std::abs(y0 + norm * z0) <= 1e-12 * scale) {
      boundary = Boundary::OnAsymptoteNegative;
    }
  }

  Region kind;
  if (y0 <= 0.0) {
    // Inactive unit: the positive part is zero, so no update ever happens.
    kind = Region::Frozen;
  } else if (z0 >= 0.0) {
    kind = Region::Solves;
  } else if (boundary == Boundary::OnAsymptoteNegative) {
    kind = Region::ConvergesToZero;
  } else if (y0 > -norm * z0) {
    kind = Region::Solves;
  } else {
    kind = Region::Dies;
  }
  return {kind, boundary};
}

namespace {

bool fate_matches(Region r, Fate f) {
  switch (r) {
    case Region::Frozen: return f == Fate::Frozen;
    case Region::Dies: return f == Fate::Dies;
    case Region::ConvergesToZero: return f == Fate::ConvergesToZero;
    case Region::Solves: return f == Fate::Solves;
  }
  return false;
}

}  // namespace

FateCheck verify_fate(double y0, double z0, double norm, double t_end,
                      double step) {
  const PhaseRegion region = classify(y0, z0, norm);
  if (!(t_end > 0.0) || !(step > 0.0)) {
    throw std::invalid_argument("verify_fate: t_end and step must be > 0");
  }

  if (y0 <= 0.0) {
    // Gated rhs is identically zero; nothing can move.
    return {region, Fate::Frozen, fate_matches(region.kind, Fate::Frozen)};
  }

  const double n2 = norm * norm;
  auto rhs = [n2](double, std::span<const double> s, std::span<double> d) {
    if (s[0] <= 0.0) {
      d[0] = d[1] = 0.0;
      return;
    }
    const double sig = specfn::sigmoid(-s[0] * s[1]);
    d[0] = n2 * s[1] * sig;
    d[1] = s[0] * sig;
  };

  std::array<double, 2> y{y0, z0};
  std::array<double, 2> k1{}, k2{}, k3{}, k4{}, tmp{};
  double prev_abs_u = std::abs(y0 * z0);
  bool shrinking = false;

  double t = 0.0;
  for (std::size_t i = 1; t < t_end; ++i) {
    double t_next = static_cast<double>(i) * step;
    if (t_next >= t_end) t_next = t_end;
    ode::detail::rk4_step(rhs, t, t_next - t, std::span<double>(y), k1, k2, k3,
                          k4, tmp);
    t = t_next;

    if (y[0] <= 0.0) {
      return {region, Fate::Dies, fate_matches(region.kind, Fate::Dies)};
    }
    const double u = y[0] * y[1];
    if (u > 10.0) {
      return {region, Fate::Solves, fate_matches(region.kind, Fate::Solves)};
    }
    shrinking = std::abs(u) < prev_abs_u;
    prev_abs_u = std::abs(u);
  }

  // Points trapped on the negative asymptote approach zero without crossing
  // it, so this outcome is only decided once the horizon is reached.
  if (prev_abs_u < 1e-3 && shrinking) {
    return {region, Fate::ConvergesToZero,
            fate_matches(region.kind, Fate::ConvergesToZero)};
  }
  return {region, Fate::Undecided, false};
}

}  // namespace neurodyn::phase
