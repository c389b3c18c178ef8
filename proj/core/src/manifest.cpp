#include "longiprog/manifest.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "longiprog/errors.hpp"
#include "longiprog/rng.hpp"

namespace longiprog {

using nlohmann::json;

void SequenceRecord::validate() const {
  if (patient_id.empty()) throw InputError("sequence record missing patient_id");
  if (eye != "left" && eye != "right") {
    throw InputError("sequence " + patient_id + ": eye must be left|right, got '" + eye + "'");
  }
  if (label != 0 && label != 1) {
    throw InputError("sequence " + id() + ": label must be 0 or 1");
  }
  double prev = -1e300;
  for (const auto& v : visits) {
    if (!(v.time_years > prev)) {
      throw InputError("sequence " + id() + ": visit times must be strictly increasing");
    }
    prev = v.time_years;
  }
  if (!visits.empty() && !(prediction_time > visits.back().time_years)) {
    throw InputError("sequence " + id() + ": prediction_time must exceed the last visit time");
  }
}

namespace {
json visit_to_json(const VisitRecord& v) {
  json j;
  j["image"] = v.image;
  j["time_years"] = v.time_years;
  j["stage"] = v.stage;
  if (v.features) j["features"] = *v.features;
  return j;
}

VisitRecord visit_from_json(const json& j) {
  VisitRecord v;
  v.image = j.value("image", std::string());
  v.time_years = j.at("time_years").get<double>();
  v.stage = j.at("stage").get<std::string>();
  if (j.contains("features")) v.features = j.at("features").get<std::vector<double>>();
  return v;
}
}  // namespace

std::vector<SequenceRecord> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path);
  std::vector<SequenceRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw IoError("manifest " + path + " line " + std::to_string(line_no) + ": " + e.what());
    }
    SequenceRecord r;
    try {
      r.patient_id = j.at("patient_id").get<std::string>();
      r.eye = j.at("eye").get<std::string>();
      for (const auto& vj : j.at("visits")) r.visits.push_back(visit_from_json(vj));
      r.prediction_time = j.at("prediction_time").get<double>();
      r.prediction_image = j.value("prediction_image", std::string());
      r.label = j.at("label").get<int>();
    } catch (const json::exception& e) {
      throw IoError("manifest " + path + " line " + std::to_string(line_no) + ": " + e.what());
    }
    r.validate();
    records.push_back(std::move(r));
  }
  return records;
}

void write_manifest(const std::string& path, const std::vector<SequenceRecord>& records) {
  std::ofstream out(path, std::ios::binary);  // binary: no newline translation
  if (!out) throw IoError("cannot write manifest " + path);
  for (const auto& r : records) {
    json j;
    j["patient_id"] = r.patient_id;
    j["eye"] = r.eye;
    json visits = json::array();
    for (const auto& v : r.visits) visits.push_back(visit_to_json(v));
    j["visits"] = std::move(visits);
    j["prediction_time"] = r.prediction_time;
    j["prediction_image"] = r.prediction_image;
    j["label"] = r.label;
    out << j.dump() << "\n";
  }
  if (!out) throw IoError("failed writing manifest " + path);
}

std::array<std::vector<SequenceRecord>, 3> split_dataset(
    const std::vector<SequenceRecord>& records, const std::array<double, 3>& fractions,
    std::uint64_t seed) {
  double total = 0.0;
  for (double f : fractions) {
    if (f < 0.0) throw ConfigError("split fractions must be nonnegative");
    total += f;
  }
  if (std::fabs(total - 1.0) > 1e-9) throw ConfigError("split fractions must sum to 1");

  // Group eyes by patient, preserving first-appearance order.
  std::vector<std::string> patient_order;
  std::map<std::string, std::vector<std::size_t>> by_patient;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto [it, inserted] = by_patient.try_emplace(records[i].patient_id);
    if (inserted) patient_order.push_back(records[i].patient_id);
    it->second.push_back(i);
  }

  Rng rng = Rng::stream(seed, 0x73706c6974ULL);  // "split" stream
  rng.shuffle(patient_order);

  const double n_eyes = static_cast<double>(records.size());
  std::array<std::vector<SequenceRecord>, 3> parts;
  std::array<double, 3> assigned{0.0, 0.0, 0.0};
  // Greedy largest-deficit assignment keeps each part within one patient
  // of its target eye count.
  for (const auto& pid : patient_order) {
    int best = 0;
    double best_deficit = -1e300;
    for (int s = 0; s < 3; ++s) {
      const double deficit = fractions[static_cast<std::size_t>(s)] * n_eyes -
                             assigned[static_cast<std::size_t>(s)];
      if (deficit > best_deficit + 1e-12) {
        best_deficit = deficit;
        best = s;
      }
    }
    for (std::size_t idx : by_patient[pid]) {
      parts[static_cast<std::size_t>(best)].push_back(records[idx]);
    }
    assigned[static_cast<std::size_t>(best)] += static_cast<double>(by_patient[pid].size());
  }

  for (std::size_t s = 0; s < 3; ++s) {
    if (fractions[s] > 0.0 && parts[s].empty()) {
      throw ConfigError("degenerate split: part " + std::to_string(s) + " received no eyes");
    }
    if (fractions[s] == 0.0) {
      throw ConfigError("degenerate split: fraction " + std::to_string(s) + " is zero");
    }
  }
  return parts;
}

}  // namespace longiprog
