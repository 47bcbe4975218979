#pragma once

#include "uniprior/classify.hpp"
#include "uniprior/code.hpp"
#include "uniprior/graph.hpp"
#include "uniprior/instance.hpp"
#include "uniprior/multi_sender.hpp"
#include "uniprior/single_sender.hpp"

#include <nlohmann/json.hpp>

// JSON mappings for every report type, used by the CLI's --format json.
// from_json is the exact inverse of to_json.
namespace uniprior {

using nlohmann::json;

void to_json(json& j, const Arc& a);
void from_json(const json& j, Arc& a);
void to_json(json& j, const ValidationReport& r);
void from_json(const json& j, ValidationReport& r);
void to_json(json& j, const WorkGraph& g);
void from_json(const json& j, WorkGraph& g);
void to_json(json& j, const Term& t);
void from_json(const json& j, Term& t);
void to_json(json& j, const Symbol& s);
void from_json(const json& j, Symbol& s);
void to_json(json& j, const LinearIndexCode& c);
void from_json(const json& j, LinearIndexCode& c);
void to_json(json& j, const BitFailure& f);
void from_json(const json& j, BitFailure& f);
void to_json(json& j, const VerifyReport& r);
void from_json(const json& j, VerifyReport& r);
void to_json(json& j, const OracleResult& r);
void from_json(const json& j, OracleResult& r);
void to_json(json& j, const PruneStep& s);
void from_json(const json& j, PruneStep& s);
void to_json(json& j, const PruneTrace& t);
void from_json(const json& j, PruneTrace& t);
void to_json(json& j, const SingleSolution& s);
void from_json(const json& j, SingleSolution& s);
void to_json(json& j, const DegeneracyWitness& w);
void from_json(const json& j, DegeneracyWitness& w);
void to_json(json& j, const StepRecord& s);
void from_json(const json& j, StepRecord& s);
void to_json(json& j, const LowerBoundReport& r);
void from_json(const json& j, LowerBoundReport& r);
void to_json(json& j, const ExhaustiveResult& r);
void from_json(const json& j, ExhaustiveResult& r);
void to_json(json& j, const ConnectingTree& t);
void from_json(const json& j, ConnectingTree& t);
void to_json(json& j, const BoundReport& r);
void from_json(const json& j, BoundReport& r);

} // namespace uniprior
