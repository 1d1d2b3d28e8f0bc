#include <doctest.h>

#include <stdexcept>

#include "poltran/config.hpp"

using namespace poltran;

TEST_CASE("parser handles the value kinds") {
  const std::string text = R"(
# run setup
[model]
n_molecules = 2000   # trailing comment
spacing = 16.0

[self_energy]
dark_only = false

[sweep]
axis = "temperature"
values = [100, 200, 300]

[output]
directory = "runs/a#1"
)";
  const ConfigTable t = parse_config(text);
  CHECK(std::get<double>(t.at("model").at("n_molecules")) == 2000.0);
  CHECK(std::get<double>(t.at("model").at("spacing")) == 16.0);
  CHECK(std::get<bool>(t.at("self_energy").at("dark_only")) == false);
  CHECK(std::get<std::string>(t.at("sweep").at("axis")) == "temperature");
  CHECK(std::get<std::vector<double>>(t.at("sweep").at("values")) ==
        std::vector<double>{100, 200, 300});
  // '#' inside a quoted string is not a comment
  CHECK(std::get<std::string>(t.at("output").at("directory")) == "runs/a#1");

  CHECK_THROWS(parse_config("[model\nx = 1"));
  CHECK_THROWS(parse_config("x 1"));
  CHECK_THROWS(parse_config("[m]\nx = 1q"));
  CHECK_THROWS(parse_config("[m]\nx = [1, 2"));
}

TEST_CASE("serialize/parse round trip is value-identical") {
  RunConfig c;
  c.model.n_molecules = 123;
  c.bath.lambda = 0.0041999999999999997;
  c.thermal.temperature = 217.3;
  c.sweep_axis = SweepAxis::lp_energy;
  c.sweep_values = {1.84, 1.86};
  c.output_directory = "some/dir";

  const ConfigTable t1 = c.to_table();
  const ConfigTable t2 = parse_config(serialize_config(t1));
  CHECK(t1 == t2);
  CHECK(config_hash(t1) == config_hash(t2));

  const RunConfig back = RunConfig::from_table(t2);
  CHECK(back.model.n_molecules == 123);
  CHECK(back.bath.lambda == c.bath.lambda);
  CHECK(back.thermal.temperature == 217.3);
  CHECK(back.sweep_axis == SweepAxis::lp_energy);
  CHECK(back.sweep_values == c.sweep_values);
  CHECK(back.output_directory == "some/dir");
  CHECK(config_hash(back.to_table()) == config_hash(t1));
}

TEST_CASE("unknown sections and keys are rejected") {
  CHECK_THROWS_WITH_AS(RunConfig::from_table(parse_config("[modle]\nspacing = 16")),
                       doctest::Contains("unknown section"), std::runtime_error);
  CHECK_THROWS_WITH_AS(RunConfig::from_table(parse_config("[model]\nspacings = 16")),
                       doctest::Contains("unknown key"), std::runtime_error);
  CHECK_THROWS(RunConfig::from_table(parse_config("[sweep]\naxis = \"size\"")));
}

TEST_CASE("defaults and t_max mapping") {
  const RunConfig c = RunConfig::from_table(parse_config(
      "[ensemble]\nt_max = 100\ndt_nuclear = 2.5\n"));
  CHECK(c.propagation.n_steps == 40);
  CHECK(c.model.n_molecules == 2000);
  CHECK(c.model.n_cavity_modes == 57);
  CHECK(c.bath.lambda == 6e-3);
  CHECK(c.thermal.temperature == 300.0);
  CHECK(c.ensemble.n_traj == 100);
  CHECK(c.sweep_axis == SweepAxis::lambda);
  c.validate();
}

TEST_CASE("sweep application") {
  RunConfig base;
  base.wavepacket.center_k = 0.002;

  const RunConfig l = apply_sweep_value(base, 2e-3);
  CHECK(l.bath.lambda == 2e-3);
  CHECK(l.thermal.temperature == base.thermal.temperature);

  RunConfig base_t = base;
  base_t.sweep_axis = SweepAxis::temperature;
  CHECK(apply_sweep_value(base_t, 150.0).thermal.temperature == 150.0);

  RunConfig base_e = base;
  base_e.sweep_axis = SweepAxis::lp_energy;
  const RunConfig e = apply_sweep_value(base_e, 1.84);
  CHECK(e.wavepacket_lp_energy == 1.84);
  CHECK(e.wavepacket.center_k == 0.0);  // re-derived from the target energy

  RunConfig bad;
  bad.sweep_values = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.sweep_values = {-1.0};
  bad.sweep_axis = SweepAxis::temperature;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("hash is sensitive to any value change") {
  RunConfig a;
  RunConfig b = a;
  b.bath.lambda = 6.0000001e-3;
  CHECK(config_hash(a.to_table()) != config_hash(b.to_table()));
}
