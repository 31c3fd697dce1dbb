#pragma once

#include <span>
#include <string>
#include <string_view>

#include "cifly/engine.hpp"
#include "cifly/ruletable.hpp"

namespace cifly::catalog {

inline constexpr std::string_view kDagDsep = "dag_dsep";
inline constexpr std::string_view kAdmgDsep = "admg_dsep";
inline constexpr std::string_view kAdmgAnc = "admg_anc";
inline constexpr std::string_view kAdmgDesc = "admg_desc";
inline constexpr std::string_view kCpdagNotAmenable = "cpdag_not_amenable";
inline constexpr std::string_view kCpdagPossAnc = "cpdag_poss_anc";
inline constexpr std::string_view kCpdagPossDesc = "cpdag_poss_desc";
inline constexpr std::string_view kCpdagBackdoor = "cpdag_backdoor";
inline constexpr std::string_view kIvCausalBlocked = "iv_causal_blocked";
inline constexpr std::string_view kIvNonCausal = "iv_non_causal";
inline constexpr std::string_view kIvOptimal = "iv_optimal";
inline constexpr std::string_view kClosure = "closure";
inline constexpr std::string_view kAidForbidden = "aid_forbidden";
inline constexpr std::string_view kAidNonCausal = "aid_non_causal";
inline constexpr std::string_view kLatentDir = "latent_dir";
inline constexpr std::string_view kLatentBidir = "latent_bidir";

struct Entry {
  std::string_view name;
  std::string_view graph_class;  // dag, admg or cpdag
  std::string_view text;

  // Location relative to the repository root, e.g. "tables/admg/closure.txt".
  std::string path() const;
};

std::span<const Entry> entries();
const Entry& entry(std::string_view name);
const CompiledTable& get(std::string_view name);

}  // namespace cifly::catalog
