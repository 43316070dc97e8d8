#pragma once

#include <json.hpp>

#include "riqs/dynamics.hpp"
#include "riqs/lattice.hpp"
#include "riqs/maser.hpp"
#include "riqs/spectral.hpp"
#include "riqs/thermo.hpp"

namespace riqs {
namespace json_io {

using nlohmann::json;

// Dense complex matrix as row-major [re, im] pairs.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// RIModel document: {"h_sys": M, "h_env": M, "v": M, "tau": t,
// "rho_env": M, "beta_env": b?}
json model_to_json(const RIModel& m);
RIModel model_from_json(const json& j);

json spectral_report_to_json(const spectral::SpectralReport& rep);

// CSV, RFC-4180 with '.' decimal separator and 17 significant digits.
std::string format_double(double v);
void write_csv(const std::string& path,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

// trajectory export: step, then flattened state entries re/im
void write_trajectory_csv(const std::string& path,
                          const dynamics::Trajectory& traj);

// thermodynamic ledger export: step, work increment, entropy increment,
// probe energy gain, and the beam index (step mod n_beams)
void write_ledger_csv(const std::string& path,
                      const thermo::ThermoLedger& ledger, int n_beams = 1);

// lattice walk distribution: offset, probability, log-probability
void write_distribution_csv(const std::string& path,
                            const lattice::WalkDistribution& dist);

json rabi_structure_to_json(const maser::RabiStructure& st);

}  // namespace json_io
}  // namespace riqs
