#include <doctest.h>

#include <fstream>
#include <sstream>

#include "orderk/claims.hpp"

using namespace orderk;

TEST_CASE("claim index is internally complete") {
  std::vector<std::string> problems = validate_claim_index();
  for (const auto& p : problems) MESSAGE(p);
  CHECK(problems.empty());
  CHECK(claim_index().size() >= 30);
  for (const ClaimEntry& c : claim_index()) {
    CHECK(!c.claim_id.empty());
    CHECK((c.status == "reproduced" || c.status == "scaled-down" ||
           c.status == "informational"));
  }
}

TEST_CASE("checked-in claim index matches the generator") {
  std::ifstream f(ORDERK_SOURCE_DIR "/docs/claims.md", std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == generate_claim_index());
}
