#pragma once

#include <json.hpp>

#include "gridforce/config.hpp"
#include "gridforce/forcing_gp.hpp"
#include "gridforce/forcing_mt.hpp"
#include "gridforce/lattice.hpp"
#include "gridforce/markers_toast.hpp"
#include "gridforce/witness.hpp"

// Malformed input raises nlohmann::json::exception or std::invalid_argument.
namespace gridforce {

using json = nlohmann::json;

template <std::size_t D>
void to_json(json& j, const Vec<D>& v) {
  j = json::array();
  for (std::size_t i = 0; i < D; ++i) j.push_back(v[i]);
}
template <std::size_t D>
void from_json(const json& j, Vec<D>& v) {
  if (!j.is_array() || j.size() != D) throw std::invalid_argument("point: expected array of " + std::to_string(D));
  for (std::size_t i = 0; i < D; ++i) v.c[i] = j.at(i).get<Coord>();
}

// [a, b, c, d] = [a,b] x [c,d]
void to_json(json& j, const Rect& r);
void from_json(const json& j, Rect& r);

void to_json(json& j, const PointSet& s);
void from_json(const json& j, PointSet& s);

void to_json(json& j, const Lattice& l);
void from_json(const json& j, Lattice& l);

void to_json(json& j, const Config& c);
void from_json(const json& j, Config& c);

void to_json(json& j, const ShiftWitness& w);
void from_json(const json& j, ShiftWitness& w);
void to_json(json& j, const PatternWitness& w);
void from_json(const json& j, PatternWitness& w);
void to_json(json& j, const MtCondition& c);
void from_json(const json& j, MtCondition& c);

// {"cover":[x,y]} | {"shift":[x,y]} | "self-pattern" | "duplicate-odd"
void to_json(json& j, const Requirement& r);
void from_json(const json& j, Requirement& r);
void to_json(json& j, const StepRecord& s);
void from_json(const json& j, StepRecord& s);
void to_json(json& j, const Certificate& c);
void from_json(const json& j, Certificate& c);

void to_json(json& j, const GpCondition& c);
void from_json(const json& j, GpCondition& c);
// {"row": y} | {"col": x}
void to_json(json& j, const Line& l);
void from_json(const json& j, Line& l);
// {"shift":[x,y]} | {"cover":[x,y]} | {"line_clear":{"row":y}}
void to_json(json& j, const GpRequirement& r);
void from_json(const json& j, GpRequirement& r);
void to_json(json& j, const GpStepRecord& s);
void from_json(const json& j, GpStepRecord& s);
void to_json(json& j, const GpCertificate& c);
void from_json(const json& j, GpCertificate& c);

void to_json(json& j, const Toast& t);
void from_json(const json& j, Toast& t);

// {"levels":[{"rects":[[a,b,c,d],...]}, ...]}
json partitions_to_json(const std::vector<RectPartition>& seq);
std::vector<RectPartition> partitions_from_json(const json& j);

// {pass, failing_positions, witness_used}
json verdict_json(const Verdict& v, const json& witness_used);

}  // namespace gridforce
