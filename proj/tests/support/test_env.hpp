#pragma once

#include <filesystem>
#include <string>

namespace sqlplan::test {

/// Fresh directory under the build tree's temp area; recreated on each call.
std::filesystem::path scratch_dir(const std::string& name);

/// Committed fixture directory (tests/fixtures/<name>).
std::filesystem::path fixture_dir(const std::string& name);

}  // namespace sqlplan::test
