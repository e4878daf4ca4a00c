#pragma once

#include "charpow/oracle.hpp"

#include <string>

namespace charpow {

// On-disk formats.  Every writer prepends "// charpow <command>" comment
// lines recording the producing invocation; parsers accept and ignore such
// comments, so the files stay valid JSON for tooling that strips them.
// Serialization order is deterministic: identical inputs give identical bytes.

// A group spec string that make_group() parses back to an equal group.
std::string group_spec_of(FiniteGroup const &G);

std::string section_to_json(Section const &s, std::string const &command);
Section section_from_json(std::string const &text);

// Class functions travel with their full context: prime data, group spec,
// one record per class carrying the representative tuple, the value, and the
// defined flag (partial functions keep their mask).
struct LoadedClassFn {
  std::string group_spec;
  GroupPtr G;
  ClassFunction f;
};

std::string classfn_to_json(ClassFunction const &f, std::string const &group_spec,
                            std::string const &command);
LoadedClassFn classfn_from_json(std::string const &text);

// Report serialization: wall_ms is intentionally omitted (reports must be
// byte-stable across runs).
std::string report_to_json(VerificationReport const &r, std::string const &command);
std::string reports_to_json(std::vector<VerificationReport> const &rs, std::string const &command);
std::string report_to_csv(std::vector<VerificationReport> const &rs);

}  // namespace charpow
