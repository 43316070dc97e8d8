#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "riqs/json_io.hpp"
#include "riqs/spinmodel.hpp"

using namespace riqs;
using namespace riqs::json_io;

TEST_CASE("matrix round trip") {
  CounterRng rng(91, 0);
  CMatrix m = test::random_matrix(rng, 3, 2);
  CMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("model round trip and validation") {
  spinmodel::SpinParams p;
  RIModel m = spinmodel::build(p);
  json j = model_to_json(m);
  RIModel back = model_from_json(j);
  CHECK((m.h_sys - back.h_sys).cwiseAbs().maxCoeff() == 0.0);
  CHECK((m.v - back.v).cwiseAbs().maxCoeff() == 0.0);
  CHECK(m.tau == back.tau);
  CHECK(m.beta_env == back.beta_env);

  json missing = j;
  missing.erase("v");
  CHECK_THROWS_AS(model_from_json(missing), Error);

  json bad = j;
  bad["tau"] = -2.0;
  CHECK_THROWS_AS(model_from_json(bad), Error);
}

TEST_CASE("spectral report serialization") {
  spinmodel::SpinParams p;
  auto rep = spectral::analyze(build_rdm(spinmodel::build(p)).superop());
  json j = spectral_report_to_json(rep);
  CHECK(j["satisfies_E"].get<bool>());
  CHECK(j["eigenvalues"].size() == 4);
  CHECK(j.contains("invariant_state"));
}

TEST_CASE("csv output is stable and rfc4180") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "riqs_io_test";
  fs::create_directories(dir);
  auto path = (dir / "t.csv").string();

  write_csv(path, {"a", "b"}, {{1.0, 0.1}, {-2.5, 1e-17}});
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content.find("a,b\r\n") == 0);
  CHECK(content.find("0.10000000000000001") != std::string::npos);

  // re-writing is byte identical
  write_csv(path, {"a", "b"}, {{1.0, 0.1}, {-2.5, 1e-17}});
  std::ifstream in2(path, std::ios::binary);
  std::string content2((std::istreambuf_iterator<char>(in2)),
                       std::istreambuf_iterator<char>());
  CHECK(content == content2);
}

TEST_CASE("ledger, distribution and structure exports") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "riqs_io_test";
  fs::create_directories(dir);

  spinmodel::SpinParams p;
  dynamics::InteractionSchedule sched =
      dynamics::Ideal{build_rdm(spinmodel::build(p))};
  auto traj = dynamics::run(sched, DensityMatrix::maximally_mixed(2), 8);
  auto led = thermo::replay(traj, gibbs(spinmodel::build(p).h_sys, 1.0));
  write_ledger_csv((dir / "ledger.csv").string(), led, 2);
  CHECK(fs::file_size(dir / "ledger.csv") > 0);

  lattice::LatticeParams lp;
  auto dist = lattice::exact_distribution(lp, 6);
  write_distribution_csv((dir / "dist.csv").string(), dist);
  std::ifstream in(dir / "dist.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.find("offset,probability,log_probability") == 0);

  auto st = maser::rabi_resonances(0, 1, 1, 1, 9);
  json j = rabi_structure_to_json(st);
  CHECK(j["classification"] == "fully_resonant");
  CHECK(j["resonances"].size() == 3);
  CHECK(j["sectors"].size() == 4);
}

TEST_CASE("trajectory export") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "riqs_io_test";
  fs::create_directories(dir);
  auto path = (dir / "traj.csv").string();

  spinmodel::SpinParams p;
  dynamics::InteractionSchedule sched =
      dynamics::Ideal{build_rdm(spinmodel::build(p))};
  auto traj = dynamics::run(sched, DensityMatrix::maximally_mixed(2), 5);
  write_trajectory_csv(path, traj);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("step,re_0_0,im_0_0") == 0);
  int lines = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 6);
}
