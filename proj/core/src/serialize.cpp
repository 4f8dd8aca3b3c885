#include "dickecat/serialize.hpp"

#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "dickecat/errors.hpp"

namespace dickecat {

using nlohmann::json;

void write_ground_state(std::ostream& out, const GroundState& ground) {
  const DickeParams& p = ground.basis.params();
  json doc;
  doc["format"] = kGroundStateFormat;
  doc["params"] = {{"omega_cav", p.omega_cav},     {"omega_atom", p.omega_atom},
                   {"coupling", p.coupling},       {"atoms", p.atoms},
                   {"photon_cutoff", p.photon_cutoff}};
  doc["sector"] = to_string(ground.basis.sector());
  doc["energy"] = ground.energy;
  doc["residual"] = ground.residual;
  doc["iterations"] = ground.iterations;
  doc["amplitudes"] = std::vector<double>(ground.amplitudes.begin(), ground.amplitudes.end());
  out << doc.dump() << '\n';
  if (!out) throw std::runtime_error("write_ground_state: stream write failed");
}

GroundState read_ground_state(std::istream& in) {
  try {
    const json doc = json::parse(in);
    if (doc.at("format").get<std::string>() != kGroundStateFormat) {
      throw FormatError("read_ground_state: unsupported format tag '" +
                        doc.at("format").get<std::string>() + "'");
    }
    const json& jp = doc.at("params");
    DickeParams params;
    params.omega_cav = jp.at("omega_cav").get<double>();
    params.omega_atom = jp.at("omega_atom").get<double>();
    params.coupling = jp.at("coupling").get<double>();
    params.atoms = jp.at("atoms").get<int>();
    params.photon_cutoff = jp.at("photon_cutoff").get<int>();
    params.validate();

    const std::string sector = doc.at("sector").get<std::string>();
    if (sector != "even" && sector != "odd") throw FormatError("read_ground_state: bad sector");
    DickeBasis basis = DickeBasis::build(params, sector == "even" ? Parity::kEven : Parity::kOdd);

    const auto amplitudes = doc.at("amplitudes").get<std::vector<double>>();
    if (amplitudes.size() != basis.size()) {
      throw FormatError("read_ground_state: " + std::to_string(amplitudes.size()) +
                        " amplitudes for a basis of " + std::to_string(basis.size()));
    }
    GroundState ground{std::move(basis),
                       Eigen::Map<const Eigen::VectorXd>(amplitudes.data(),
                                                         static_cast<Eigen::Index>(amplitudes.size())),
                       doc.at("energy").get<double>(), doc.at("residual").get<double>(),
                       doc.at("iterations").get<int>()};
    return ground;
  } catch (const json::exception& e) {
    throw FormatError(std::string("read_ground_state: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("read_ground_state: ") + e.what());
  }
}

std::string herald_outcome_json(const HeraldOutcome& outcome) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < outcome.state.amplitudes().size(); ++i) {
    const auto a = outcome.state.amplitudes()[i];
    amps.push_back({a.real(), a.imag()});
  }
  const json doc = {{"n", outcome.photons},
                    {"probability", outcome.probability},
                    {"amplitudes", std::move(amps)}};
  return doc.dump();
}

}  // namespace dickecat
