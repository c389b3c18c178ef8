#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace longiprog {

// One visit of one eye. `features` is the escape hatch for externally
// computed feature vectors: when present, the pipeline consumes it
// directly and never touches `image`.
struct VisitRecord {
  std::string image;
  double time_years = 0.0;
  std::string stage;  // "early" | "advanced"
  std::optional<std::vector<double>> features;
};

// One eye's longitudinal record: the observed visits plus the held-out
// prediction visit that supplies the ground-truth label.
struct SequenceRecord {
  std::string patient_id;
  std::string eye;  // "left" | "right"
  std::vector<VisitRecord> visits;
  double prediction_time = 0.0;
  std::string prediction_image;
  int label = 0;  // 1 iff the prediction visit reached the advanced stage

  std::string id() const { return patient_id + "_" + (eye == "right" ? "R" : "L"); }
  void validate() const;
};

// JSONL, one object per line, keys serialized in sorted order so that
// regeneration with the same config is byte-identical.
std::vector<SequenceRecord> read_manifest(const std::string& path);
void write_manifest(const std::string& path, const std::vector<SequenceRecord>& records);

// Patient-level split: every eye of a patient lands in the same part.
// fractions must sum to 1 and every part must receive at least one eye.
// Deterministic under seed.
std::array<std::vector<SequenceRecord>, 3> split_dataset(
    const std::vector<SequenceRecord>& records, const std::array<double, 3>& fractions,
    std::uint64_t seed);

}  // namespace longiprog
