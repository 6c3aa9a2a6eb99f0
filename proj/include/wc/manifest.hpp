#pragma once

#include <string>
#include <vector>

#include "wc/report.hpp"

namespace wc {

struct ManifestCheck {
  std::string id;
  std::string claim;
  bool pass = false;
  json observed;
};

// Fixed list of worked examples, shared by the CLI and the acceptance run.
std::vector<std::string> manifest_ids();
std::vector<ManifestCheck> run_manifest();
ManifestCheck run_manifest_entry(const std::string& id);

} // namespace wc
