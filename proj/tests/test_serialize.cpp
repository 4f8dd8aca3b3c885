#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "dickecat/errors.hpp"
#include "dickecat/herald.hpp"
#include "dickecat/serialize.hpp"

using namespace dickecat;

TEST(GroundStateJson, RoundTripIsBitIdentical) {
  const GroundState g = solve_ground_state(DickeParams::at_ratio(17, 0.93, 1.7, 25));
  std::stringstream buffer;
  write_ground_state(buffer, g);
  const GroundState back = read_ground_state(buffer);
  EXPECT_EQ(back.amplitudes, g.amplitudes);
  EXPECT_EQ(back.energy, g.energy);
  EXPECT_EQ(back.residual, g.residual);
  EXPECT_EQ(back.iterations, g.iterations);
  EXPECT_EQ(back.basis.size(), g.basis.size());
  EXPECT_EQ(back.basis.sector(), g.basis.sector());
  EXPECT_EQ(back.basis.params().coupling, g.basis.params().coupling);
  EXPECT_EQ(back.basis.params().omega_atom, 1.7);
}

TEST(GroundStateJson, RejectsCorruption) {
  const GroundState g = solve_ground_state(DickeParams::at_ratio(5, 0.5, 1.0, 6));
  std::stringstream buffer;
  write_ground_state(buffer, g);
  const std::string text = buffer.str();

  std::stringstream truncated(text.substr(0, text.size() / 2));
  EXPECT_THROW(read_ground_state(truncated), FormatError);

  nlohmann::json doc = nlohmann::json::parse(text);
  doc["format"] = "dickecat.ground_state/0";
  std::stringstream wrong_tag(doc.dump());
  EXPECT_THROW(read_ground_state(wrong_tag), FormatError);

  doc = nlohmann::json::parse(text);
  doc["amplitudes"].erase(0);
  std::stringstream short_vector(doc.dump());
  EXPECT_THROW(read_ground_state(short_vector), FormatError);

  doc = nlohmann::json::parse(text);
  doc["params"]["atoms"] = -3;
  std::stringstream bad_params(doc.dump());
  EXPECT_THROW(read_ground_state(bad_params), FormatError);
}

TEST(HeraldJson, Fields) {
  const GroundState g = solve_ground_state(DickeParams::at_ratio(4, 1.0, 1.0, 10));
  const HeraldOutcome h = herald(g, 1);
  const auto doc = nlohmann::json::parse(herald_outcome_json(h));
  EXPECT_EQ(doc["n"], 1);
  EXPECT_EQ(doc["probability"].get<double>(), h.probability);
  ASSERT_EQ(doc["amplitudes"].size(), 5u);
  EXPECT_EQ(doc["amplitudes"][1][0].get<double>(), h.state[1].real());
  EXPECT_EQ(doc["amplitudes"][1][1].get<double>(), 0.0);
}
