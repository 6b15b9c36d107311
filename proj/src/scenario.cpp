#include "arago/scenario.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "arago/errors.hpp"

namespace arago {
namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError(field + ": " + what);
}

double to_double(const std::string& field, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
    fail(field, "expected a number, got '" + text + "'");
  return v;
}

long long to_integer(const std::string& field, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE)
    fail(field, "expected an integer, got '" + text + "'");
  return v;
}

PolarizationState parse_polarization(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (kind == "linear") return PolarizationState::linear(to_double("polarization", arg) * kPi / 180.0);
    if (kind == "circular") {
      if (arg == "r") return PolarizationState::circular_right();
      if (arg == "l") return PolarizationState::circular_left();
      fail("polarization", "circular handedness must be r or l");
    }
    if (kind == "elliptic") {
      std::vector<double> v;
      std::stringstream ss(arg);
      std::string item;
      while (std::getline(ss, item, ',')) v.push_back(to_double("polarization", trim(item)));
      if (v.size() != 3) fail("polarization", "elliptic needs <alpha>,<beta>,<phi_rad>");
      return PolarizationState::elliptic(v[0], v[1], v[2]);
    }
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    if (msg.rfind("polarization", 0) == 0) throw;
    fail("polarization", msg);
  }
  fail("polarization", "expected linear:<deg>, circular:<r|l> or elliptic:<a>,<b>,<phi_rad>");
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Decimal text t with strtod(t) * unit == value, so configs round-trip.
std::string scaled(double value, double unit) {
  double guess = value / unit;
  for (int i = 0; i < 64; ++i) {
    if (guess * unit == value) break;
    guess = std::nextafter(guess, guess * unit < value ? HUGE_VAL : -HUGE_VAL);
  }
  return format_number(guess);
}

}  // namespace

void Scenario::validate() const {
  if (name.empty()) fail("name", "must not be empty");
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
      fail("name", "only letters, digits, '-', '_' and '.' are allowed");
  if (!(wave.wavelength > 0)) fail("wavelength_nm", "must be positive");
  if (!(wave.screen_distance > 0 && wave.screen_distance <= kMaxDistance))
    fail("screen_distance_mm", "must lie in (0, 2000] mm");
  if (!(grating.slit_width > 0)) fail("slit_width_mm", "must be positive");
  if (!(grating.slit_width < grating.separation))
    fail("slit_width_mm", "slit width must be smaller than the slit separation");
  if (!grating.is_open(Slit::first) && !grating.is_open(Slit::second))
    fail("open_slits", "at least one slit must be open");
  if (profile.kind == IncidentProfile::Kind::gaussian && !(profile.waist > 0))
    fail("profile", "gaussian waist must be positive");
  auto check_pol = [](const PolarizationState& p) {
    const double norm = std::hypot(p.alpha, p.beta);
    if (!(std::isfinite(norm) && std::abs(norm - 1.0) < 1e-12 && p.alpha >= 0 && p.beta >= 0))
      fail("polarization", "amplitudes must be non-negative and normalizable");
  };
  check_pol(polarization);
  for (const auto& s : sweep) check_pol(s.state);
  if (screen.n_points < 2) fail("n_points", "need at least 2 points");
  if (!(screen.x_min < screen.x_max)) fail("x_max_mm", "must exceed x_min_mm");
  if (!(std::abs(screen.x_min) <= kMaxTransverse && std::abs(screen.x_max) <= kMaxTransverse))
    fail("x_min_mm", "screen grid must lie within |x| <= 25 mm");
  if (trajectories) {
    if (trajectories->plan.count_per_slit < 1) fail("trajectories", "need at least one per slit");
    if (trajectories->plan.y0 < 0 || trajectories->plan.y0 >= wave.screen_distance)
      fail("launch_height_um", "must lie between the grating and the screen");
  }
}

OpticalSetup Scenario::setup() const { return {wave, grating, polarization, polarizers, profile}; }

std::vector<double> Scenario::grid() const {
  return linspace(screen.x_min, screen.x_max, screen.n_points);
}

std::vector<std::string> builtin_scenario_names() { return {"fig3-sweep", "fig5", "fig6"}; }

Scenario builtin_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "fig5" || name == "fig6") {
    s.polarization = PolarizationState::circular_right();
    s.polarizers = name == "fig5" ? PolarizerConfig::none : PolarizerConfig::orthogonal;
    TrajectorySettings t;
    t.plan.count_per_slit = 15;
    s.trajectories = t;
  } else if (name == "fig3-sweep") {
    s.sweep = standard_polarization_states();
  } else {
    throw ValidationError("scenario: unknown built-in '" + name + "'");
  }
  s.validate();
  return s;
}

Scenario parse_scenario(std::istream& in, const std::string& source) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(source + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!kv.emplace(key, trim(line.substr(eq + 1))).second)
      throw ValidationError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }

  Scenario s;
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("name")) s.name = *v;
  double wavelength = s.wave.wavelength, distance = s.wave.screen_distance;
  if (auto v = take("wavelength_nm")) wavelength = to_double("wavelength_nm", *v) * 1e-9;
  if (auto v = take("screen_distance_mm")) distance = to_double("screen_distance_mm", *v) * 1e-3;
  if (!(wavelength > 0)) fail("wavelength_nm", "must be positive");
  if (!(distance > 0 && distance <= kMaxDistance)) fail("screen_distance_mm", "must lie in (0, 2000] mm");
  s.wave = WaveParameters::from_wavelength(wavelength, distance);

  if (auto v = take("slit_separation_mm")) s.grating.separation = to_double("slit_separation_mm", *v) * 1e-3;
  if (auto v = take("slit_width_mm")) s.grating.slit_width = to_double("slit_width_mm", *v) * 1e-3;
  if (auto v = take("open_slits")) {
    if (*v == "both") s.grating.open = {true, true};
    else if (*v == "first") s.grating.open = {true, false};
    else if (*v == "second") s.grating.open = {false, true};
    else fail("open_slits", "expected both, first or second");
  }

  if (auto v = take("polarization")) s.polarization = parse_polarization(*v);
  if (auto v = take("polarizers")) {
    if (*v == "none") s.polarizers = PolarizerConfig::none;
    else if (*v == "orthogonal") s.polarizers = PolarizerConfig::orthogonal;
    else fail("polarizers", "expected none or orthogonal");
  }
  if (auto v = take("profile")) {
    if (*v == "plane") {
      s.profile = IncidentProfile::plane();
    } else if (v->rfind("gaussian:", 0) == 0) {
      const double w = to_double("profile", v->substr(9)) * 1e-3;
      if (!(w > 0)) fail("profile", "gaussian waist must be positive");
      s.profile = IncidentProfile::gaussian(w);
    } else {
      fail("profile", "expected plane or gaussian:<w_mm>");
    }
  }
  if (auto v = take("sweep")) {
    if (*v != "standard") fail("sweep", "only 'standard' (eight states) is supported");
    s.sweep = standard_polarization_states();
  }

  if (auto v = take("x_min_mm")) s.screen.x_min = to_double("x_min_mm", *v) * 1e-3;
  if (auto v = take("x_max_mm")) s.screen.x_max = to_double("x_max_mm", *v) * 1e-3;
  if (auto v = take("n_points")) {
    const long long n = to_integer("n_points", *v);
    if (n < 2 || n > 10'000'000) fail("n_points", "need between 2 and 1e7 points");
    s.screen.n_points = static_cast<int>(n);
  }

  if (auto v = take("seed")) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long seed = std::strtoull(v->c_str(), &end, 10);
    if (v->empty() || !std::isdigit(static_cast<unsigned char>(v->front())) ||
        end != v->c_str() + v->size() || errno == ERANGE)
      fail("seed", "expected a non-negative integer, got '" + *v + "'");
    s.seed = seed;
  }

  auto launch = take("launch");
  auto height = take("launch_height_um");
  auto accuracy = take("accuracy");
  if (auto v = take("trajectories")) {
    const long long n = to_integer("trajectories", *v);
    if (n < 2 || n % 2 != 0 || n > 10'000'000) fail("trajectories", "need an even count >= 2");
    TrajectorySettings t;
    t.plan.count_per_slit = static_cast<int>(n / 2);
    t.plan.seed = s.seed;
    if (launch) {
      if (*launch == "uniform") t.plan.distribution = LaunchPlan::Distribution::uniform;
      else if (*launch == "density_weighted") t.plan.distribution = LaunchPlan::Distribution::density_weighted;
      else fail("launch", "expected uniform or density_weighted");
    }
    if (height) {
      t.plan.y0 = to_double("launch_height_um", *height) * 1e-6;
      if (!(t.plan.y0 > 0)) fail("launch_height_um", "must be positive");
    }
    if (accuracy) {
      if (*accuracy == "standard") t.accuracy = TrajectorySettings::Accuracy::standard;
      else if (*accuracy == "survey") t.accuracy = TrajectorySettings::Accuracy::survey;
      else fail("accuracy", "expected standard or survey");
    }
    s.trajectories = t;
  } else if (launch || height || accuracy) {
    fail(launch ? "launch" : height ? "launch_height_um" : "accuracy", "requires trajectories");
  }

  if (!kv.empty()) fail(kv.begin()->first, "unknown key");
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  return parse_scenario(in, path.string());
}

std::string to_config(const Scenario& s) {
  std::ostringstream out;
  out << "name = " << s.name << "\n";
  out << "wavelength_nm = " << scaled(s.wave.wavelength, 1e-9) << "\n";
  out << "screen_distance_mm = " << scaled(s.wave.screen_distance, 1e-3) << "\n";
  out << "slit_separation_mm = " << scaled(s.grating.separation, 1e-3) << "\n";
  out << "slit_width_mm = " << scaled(s.grating.slit_width, 1e-3) << "\n";
  const bool first = s.grating.is_open(Slit::first), second = s.grating.is_open(Slit::second);
  out << "open_slits = " << (first && second ? "both" : first ? "first" : "second") << "\n";
  out << "polarization = elliptic:" << format_number(s.polarization.alpha) << ","
      << format_number(s.polarization.beta) << "," << format_number(s.polarization.phi) << "\n";
  out << "polarizers = " << (s.polarizers == PolarizerConfig::none ? "none" : "orthogonal") << "\n";
  if (s.profile.kind == IncidentProfile::Kind::plane) {
    out << "profile = plane\n";
  } else {
    out << "profile = gaussian:" << scaled(s.profile.waist, 1e-3) << "\n";
  }
  if (!s.sweep.empty()) out << "sweep = standard\n";
  out << "x_min_mm = " << scaled(s.screen.x_min, 1e-3) << "\n";
  out << "x_max_mm = " << scaled(s.screen.x_max, 1e-3) << "\n";
  out << "n_points = " << s.screen.n_points << "\n";
  out << "seed = " << s.seed << "\n";
  if (s.trajectories) {
    const TrajectorySettings& t = *s.trajectories;
    out << "trajectories = " << 2 * t.plan.count_per_slit << "\n";
    out << "launch = "
        << (t.plan.distribution == LaunchPlan::Distribution::uniform ? "uniform" : "density_weighted")
        << "\n";
    if (t.plan.y0 > 0) out << "launch_height_um = " << scaled(t.plan.y0, 1e-6) << "\n";
    out << "accuracy = "
        << (t.accuracy == TrajectorySettings::Accuracy::standard ? "standard" : "survey") << "\n";
  }
  return out.str();
}

}  // namespace arago
