#include <gtest/gtest.h>

#include "helpers.hpp"

namespace cfd {
namespace {

using testing::make_instance;
using testing::q;

TEST(InstanceJson, RoundTrip) {
  for (int seed = 0; seed < 20; ++seed) {
    const auto inst = gen_random(seed, GraphKind::connected, 2 + seed % 7, 1 + seed % 3, 13);
    const Json j = instance_to_json(inst);
    const auto back = instance_from_json(j);
    EXPECT_EQ(instance_to_json(back), j);
    EXPECT_EQ(back.graph().edges(), inst.graph().edges());
  }
}

TEST(InstanceJson, MissingUtilitiesAreZero) {
  const auto j = parse_json_text(R"({"graph":{"vertices":["x","y"],"edges":[["x","y"]]},
    "agents":[{"name":"p","utilities":{"y":"1/1"}},{"name":"r","utilities":{"x":1}}]})");
  const auto inst = instance_from_json(j);
  EXPECT_EQ(inst.utility(0, 0), q(0));
  EXPECT_EQ(inst.utility(0, 1), q(1));
  EXPECT_EQ(inst.utility(1, 0), q(1));
  EXPECT_EQ(instance_to_json(inst)["agents"][0]["utilities"]["x"], "0/1");
}

TEST(InstanceJson, Errors) {
  EXPECT_THROW(parse_json_text("{"), InputError);
  EXPECT_THROW(instance_from_json(parse_json_text(R"({"agents":[]})")), InputError);
  EXPECT_THROW(instance_from_json(parse_json_text(
                   R"({"graph":{"vertices":["x"],"edges":[["x","z"]]},"agents":[{"name":"p","utilities":{"x":1}}]})")),
               InputError);
  EXPECT_THROW(instance_from_json(parse_json_text(
                   R"({"graph":{"vertices":["x"]},"agents":[{"name":"p","utilities":{"z":1}}]})")),
               InputError);
  EXPECT_THROW(instance_from_json(parse_json_text(
                   R"({"graph":{"vertices":["x"]},"agents":[{"name":"p","utilities":{"x":"1/0"}}]})")),
               InputError);
  EXPECT_THROW(instance_from_json(parse_json_text(
                   R"({"graph":{"vertices":["x","y"]},"agents":[{"name":"p","utilities":{"x":"1/2"}}]})")),
               InputError);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), InputError);
}

TEST(AllocationJson, RoundTripAndOverlap) {
  const auto inst = make_instance(ItemGraph::path(3), {{1, 1, 1}, {1, 1, 1}}, 3);
  const Allocation a{{{0, 1}, {2}}};
  EXPECT_EQ(allocation_from_json(inst, allocation_to_json(inst, a)).bundles, a.bundles);
  const auto overlap = allocation_from_json(inst, parse_json_text(R"({"bundles":{"a1":["v1","v2"],"a2":["v2"]}})"));
  EXPECT_FALSE(is_valid(inst, overlap));
  const auto partial = allocation_from_json(inst, parse_json_text(R"({"bundles":{"a2":["v3"]}})"));
  EXPECT_TRUE(partial.bundles[0].empty());
  EXPECT_THROW(allocation_from_json(inst, parse_json_text(R"({"bundles":{"zz":[]}})")), InputError);
  EXPECT_THROW(allocation_from_json(inst, parse_json_text(R"({"bundles":{"a1":["v9"]}})")), InputError);
}

TEST(ReportJson, Format) {
  const auto inst = make_instance(ItemGraph::path(3), {{1, 1, 1}, {1, 1, 1}}, 3);
  const auto yes = report_to_json(inst, solve_mms_tree(inst));
  EXPECT_EQ(yes.dump(),
            R"({"decision":"yes","method":"mms-tree","allocation":{"bundles":{"a1":["v3"],"a2":["v1","v2"]}},)"
            R"("values":{"a1":"1/3","a2":"2/3"},"quotas":{"a1":"1/3","a2":"1/3"}})");
  const auto no = report_to_json(fixture_cycle8(), oracle_prop(fixture_cycle8()));
  EXPECT_EQ(no.dump(), R"({"decision":"no","method":"oracle","allocation":null,"values":{},"quotas":null})");
}

TEST(ClassifyJson, Fields) {
  const auto j = classify_to_json(ItemGraph::cycle(4));
  EXPECT_EQ(j.dump(),
            R"({"vertices":4,"edges":4,"connected":true,"path":false,"star":false,"tree":false,"cycle":true,"bipartite":true})");
}

}  // namespace
}  // namespace cfd
