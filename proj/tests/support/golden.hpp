// Golden-file comparison. Set THERMSCHED_UPDATE_GOLDEN=1 to rewrite.
#pragma once

#include "thermsched/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace golden {

inline std::string path(const std::string &name) {
  return std::string(THERMSCHED_GOLDEN_DIR) + "/" + name;
}

inline void expect_matches(const std::string &name, const std::string &actual) {
  if (const char *u = std::getenv("THERMSCHED_UPDATE_GOLDEN"); u && *u == '1') {
    thermsched::write_file(path(name), actual);
    return;
  }
  std::ifstream in(path(name), std::ios::binary);
  ASSERT_TRUE(in) << "missing golden " << path(name);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), actual) << "golden " << name << " changed";
}

} // namespace golden
