#include "psr/report.hpp"

#include "psr/random.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

namespace psr {

std::vector<double> sweep_grid(const SweepSpec& s) {
  if (s.points < 1) throw std::invalid_argument("sweep needs at least one point");
  std::vector<double> out(s.points);
  for (int i = 0; i < s.points; ++i)
    out[i] = s.start + i * (s.stop - s.start) / s.points;
  return out;
}

double parse_angle(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty angle");

  const size_t at = t.find("pi");
  if (at == std::string::npos) {
    size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad angle: " + text);
    return v;
  }
  std::string coef = t.substr(0, at);
  std::string rest = t.substr(at + 2);
  double num = 1.0;
  if (coef == "-")
    num = -1.0;
  else if (!coef.empty() && coef != "+") {
    size_t used = 0;
    num = std::stod(coef, &used);
    if (used != coef.size()) throw std::invalid_argument("bad angle: " + text);
  }
  double den = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') throw std::invalid_argument("bad angle: " + text);
    size_t used = 0;
    den = std::stod(rest.substr(1), &used);
    if (used != rest.size() - 1 || den == 0.0)
      throw std::invalid_argument("bad angle: " + text);
  }
  return num * kPi / den;
}

SweepSpec parse_sweep(const std::string& text) {
  const size_t a = text.find(':');
  const size_t b = text.rfind(':');
  if (a == std::string::npos || b == a)
    throw std::invalid_argument("sweep must look like start:stop:points");
  SweepSpec s;
  s.start = parse_angle(text.substr(0, a));
  s.stop = parse_angle(text.substr(a + 1, b - a - 1));
  const std::string pts = text.substr(b + 1);
  size_t used = 0;
  s.points = std::stoi(pts, &used);
  if (used != pts.size() || s.points < 1)
    throw std::invalid_argument("sweep needs a positive point count");
  return s;
}

DensityMatrix parse_state(const std::string& text) {
  auto pure = [](Complex a, Complex b) {
    Vector v(2);
    v << a, b;
    v /= v.norm();
    return DensityMatrix::pure(StateVector({2}, v));
  };
  const double r = 1.0 / std::sqrt(2.0);
  if (text == "0") return pure(1, 0);
  if (text == "1") return pure(0, 1);
  if (text == "+") return pure(r, r);
  if (text == "-") return pure(r, -r);
  if (text == "+i") return pure(r, Complex{0, r});
  if (text == "-i") return pure(r, Complex{0, -r});

  const size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("unknown data state: " + text);
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (kind == "haar") {
    Xoshiro256StarStar gen = stream_for(std::stoull(arg), 0);
    return DensityMatrix::pure(StateVector({2}, gen.haar_qubit()));
  }
  if (kind == "ball") {
    Xoshiro256StarStar gen = stream_for(std::stoull(arg), 1);
    return DensityMatrix({2}, gen.bloch_ball_state());
  }
  if (kind == "bloch") {
    double x[3];
    size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      const size_t next = i < 2 ? arg.find(',', pos) : arg.size();
      if (next == std::string::npos)
        throw std::invalid_argument("bloch state needs x,y,z");
      x[i] = std::stod(arg.substr(pos, next - pos));
      pos = next + 1;
    }
    if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] > 1.0 + 1e-12)
      throw std::invalid_argument("bloch vector leaves the unit ball");
    Matrix rho(2, 2);
    rho << Complex{1.0 + x[2], 0.0}, Complex{x[0], -x[1]}, Complex{x[0], x[1]},
        Complex{1.0 - x[2], 0.0};
    return DensityMatrix({2}, 0.5 * rho);
  }
  throw std::invalid_argument("unknown data state: " + text);
}

std::vector<ReportRow> run_report(const RunConfig& cfg) {
  const DensityMatrix xi = parse_state(cfg.xi);
  const std::string name = scheme_name(cfg.scheme);
  std::vector<ReportRow> rows;
  for (size_t item = 0; item < cfg.phis.size(); ++item) {
    const double phi = cfg.phis[item];
    const std::vector<ProtocolOutcome> outcomes =
        run_scheme(cfg.scheme, cfg.rounds, phi, xi);

    const Matrix u = phase_gate(phi).matrix;
    const Matrix target = u * xi.mat * u.adjoint();

    std::vector<double> freq(outcomes.size(), 0.0);
    if (cfg.shots > 0) {
      Xoshiro256StarStar gen = stream_for(cfg.seed, item);
      for (long long s = 0; s < cfg.shots; ++s) {
        const double draw = gen.uniform01();
        double acc = 0.0;
        size_t pick = outcomes.size() - 1;
        for (size_t i = 0; i < outcomes.size(); ++i) {
          acc += outcomes[i].probability;
          if (draw < acc) {
            pick = i;
            break;
          }
        }
        freq[pick] += 1.0;
      }
      for (double& f : freq) f /= static_cast<double>(cfg.shots);
    }

    for (size_t i = 0; i < outcomes.size(); ++i) {
      ReportRow row;
      row.protocol = name;
      row.phi = phi;
      row.outcome = outcomes[i].label;
      row.probability = cfg.shots > 0 ? freq[i] : outcomes[i].probability;
      row.success = outcomes[i].success;
      row.fidelity = outcomes[i].probability >= 1e-14
                         ? fidelity(outcomes[i].post_state.mat, target)
                         : std::numeric_limits<double>::quiet_NaN();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

static std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::string out = "protocol,phi,outcome,probability,success,fidelity\n";
  for (const ReportRow& r : rows) {
    // Outcome labels may contain commas; quote them per RFC 4180.
    out += r.protocol + "," + fmt(r.phi) + ",\"" + r.outcome + "\"," +
           fmt(r.probability) + "," + (r.success ? "true" : "false") + "," +
           (std::isnan(r.fidelity) ? "" : fmt(r.fidelity)) + "\n";
  }
  return out;
}

nlohmann::json rows_to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ReportRow& r : rows) {
    nlohmann::json j{{"protocol", r.protocol}, {"phi", r.phi},
                     {"outcome", r.outcome},   {"probability", r.probability},
                     {"success", r.success}};
    if (std::isnan(r.fidelity))
      j["fidelity"] = nullptr;
    else
      j["fidelity"] = r.fidelity;
    arr.push_back(std::move(j));
  }
  return arr;
}

static nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json outcome_report_json(const RunConfig& cfg, double phi,
                                   const std::vector<ProtocolOutcome>& outcomes) {
  nlohmann::json outs = nlohmann::json::array();
  for (const ProtocolOutcome& o : outcomes)
    outs.push_back({{"label", o.label},
                    {"probability", o.probability},
                    {"success", o.success},
                    {"post_state_matrix", matrix_to_json(o.post_state.mat)}});
  return {{"protocol", scheme_name(cfg.scheme)},
          {"params",
           {{"rounds", cfg.rounds}, {"phi", phi}, {"xi", cfg.xi}}},
          {"outcomes", std::move(outs)}};
}

}  // namespace psr
