#include "riqs/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace riqs {
namespace json_io {

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw Error("matrix_from_json: expected a non-empty array of rows");
  const auto rows = j.size();
  const auto cols = j[0].size();
  CMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw Error("matrix_from_json: ragged rows");
    for (size_t k = 0; k < cols; ++k) {
      const auto& cell = j[i][k];
      if (!cell.is_array() || cell.size() != 2)
        throw Error("matrix_from_json: entries must be [re, im] pairs");
      m(i, k) = cxd(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

json model_to_json(const RIModel& m) {
  json j;
  j["h_sys"] = matrix_to_json(m.h_sys);
  j["h_env"] = matrix_to_json(m.h_env);
  j["v"] = matrix_to_json(m.v);
  j["tau"] = m.tau;
  j["rho_env"] = matrix_to_json(m.rho_env);
  if (!std::isnan(m.beta_env)) j["beta_env"] = m.beta_env;
  return j;
}

RIModel model_from_json(const json& j) {
  for (const auto& key : {"h_sys", "h_env", "v", "tau", "rho_env"})
    if (!j.contains(key))
      throw Error(std::string("model_from_json: missing field ") + key);
  RIModel m;
  m.h_sys = matrix_from_json(j.at("h_sys"));
  m.h_env = matrix_from_json(j.at("h_env"));
  m.v = matrix_from_json(j.at("v"));
  m.tau = j.at("tau").get<double>();
  m.rho_env = matrix_from_json(j.at("rho_env"));
  if (j.contains("beta_env")) m.beta_env = j.at("beta_env").get<double>();
  m.validate();
  return m;
}

json spectral_report_to_json(const spectral::SpectralReport& rep) {
  json j;
  json evs = json::array();
  for (const auto& v : rep.eigenvalues) evs.push_back({v.real(), v.imag()});
  j["eigenvalues"] = evs;
  json per = json::array();
  for (const auto& v : rep.peripheral) per.push_back({v.real(), v.imag()});
  j["peripheral"] = per;
  j["satisfies_E"] = rep.satisfies_E;
  j["gap"] = rep.gap;
  if (rep.invariant_state)
    j["invariant_state"] = matrix_to_json(rep.invariant_state->matrix());
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_csv: cannot open " + path);
  for (size_t c = 0; c < columns.size(); ++c)
    out << columns[c] << (c + 1 < columns.size() ? "," : "");
  out << "\r\n";
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c)
      out << format_double(row[c]) << (c + 1 < row.size() ? "," : "");
    out << "\r\n";
  }
}

void write_ledger_csv(const std::string& path,
                      const thermo::ThermoLedger& ledger, int n_beams) {
  std::vector<std::vector<double>> rows;
  for (size_t k = 0; k < ledger.probe_gains.size(); ++k) {
    rows.push_back({double(k + 1),
                    k < ledger.work_steps.size() ? ledger.work_steps[k] : 0.0,
                    ledger.entropy_increments[k], ledger.probe_gains[k],
                    double(k % std::max(1, n_beams))});
  }
  write_csv(path, {"step", "work", "entropy_increment", "probe_gain", "beam"},
            rows);
}

void write_distribution_csv(const std::string& path,
                            const lattice::WalkDistribution& dist) {
  std::vector<std::vector<double>> rows;
  for (long k = -dist.n; k <= dist.n; ++k)
    rows.push_back({double(k), dist.prob(k), dist.log_prob[k + dist.n]});
  write_csv(path, {"offset", "probability", "log_probability"}, rows);
}

json rabi_structure_to_json(const maser::RabiStructure& st) {
  json j;
  j["resonances"] = st.resonances;
  json sectors = json::array();
  for (auto [first, last] : st.sectors) sectors.push_back({first, last});
  j["sectors"] = sectors;
  switch (st.classification) {
    case maser::Resonance::NonResonant:
      j["classification"] = "non_resonant";
      break;
    case maser::Resonance::SimplyResonant:
      j["classification"] = "simply_resonant";
      break;
    case maser::Resonance::FullyResonant:
      j["classification"] = "fully_resonant";
      break;
  }
  j["degenerate"] = st.degenerate;
  j["exact_arithmetic"] = st.exact_arithmetic;
  return j;
}

void write_trajectory_csv(const std::string& path,
                          const dynamics::Trajectory& traj) {
  if (traj.states.empty()) throw Error("write_trajectory_csv: empty");
  const int d = traj.states[0].dim();
  std::vector<std::string> cols = {"step"};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cols.push_back("re_" + std::to_string(i) + "_" + std::to_string(j));
      cols.push_back("im_" + std::to_string(i) + "_" + std::to_string(j));
    }
  std::vector<std::vector<double>> rows;
  for (size_t n = 0; n < traj.states.size(); ++n) {
    std::vector<double> row = {double(n)};
    const CMatrix& m = traj.states[n].matrix();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        row.push_back(m(i, j).real());
        row.push_back(m(i, j).imag());
      }
    rows.push_back(std::move(row));
  }
  write_csv(path, cols, rows);
}

}  // namespace json_io
}  // namespace riqs
