#include "support/test_env.hpp"

namespace sqlplan::test {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "sqlplan_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path fixture_dir(const std::string& name) {
  return fs::path(SQLPLAN_FIXTURE_DIR) / name;
}

}  // namespace sqlplan::test
