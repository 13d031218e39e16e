#include <catch2/catch_amalgamated.hpp>

#include <future>
#include <memory>
#include <vector>

#include "neqrscope/neqrscope.hpp"
#include "neqrscope/server.hpp"

using namespace neqrscope;
using io::Json;
using Catch::Matchers::WithinAbs;

namespace {

std::shared_ptr<const api::Session> pipeline_session() {
    static const auto s = std::make_shared<const api::Session>(api::Session::from_circuit(scenarios::broken_final_gate()));
    return s;
}

Json get_json(const api::Api& a, const std::string& path, const api::Query& q = {}) {
    const auto r = a.get(path, q);
    INFO(path << " -> " << r.body);
    REQUIRE(r.status == 200);
    return Json::parse(r.body);
}

} // namespace

TEST_CASE("no session", "[server]") {
    const api::Api a(nullptr);
    const auto r = a.get("/api/circuit");
    CHECK(r.status == 503);
    CHECK(Json::parse(r.body)["error"]["code"] == 503);
}

TEST_CASE("circuit summary", "[server]") {
    const api::Api a(pipeline_session());
    const auto j = get_json(a, "/api/circuit");
    CHECK(j["qubit_count"] == 10);
    CHECK(j["layout"]["n"] == 1);
    CHECK(j["layout"]["b"] == 8);
    CHECK(j["names"] == Json::array({"NEQR", "X", "PIXEL(POS=(0,0), VAL=255)"}));
    CHECK(j["gates"][1]["basic_gates"].size() == 8);
    CHECK(j["gates"][1]["basic_gates"][0]["kind"] == "x");

    const api::Api big(std::make_shared<const api::Session>(api::Session::from_circuit(scenarios::prep8x8())));
    const auto names = get_json(big, "/api/circuit")["names"];
    REQUIRE(names.size() == 65);
    CHECK(names[1] == "PIXEL(POS=(0,0), VAL=0)");
    CHECK(names[64] == "PIXEL(POS=(7,7), VAL=252)");
}

TEST_CASE("meta", "[server]") {
    const auto j = get_json(api::Api(pipeline_session()), "/api/meta");
    CHECK(j["gate_count"] == 3);
    CHECK(j["bins"] == 8);
    CHECK(j["defaults"]["port"] == 8787);
}

TEST_CASE("gate analysis", "[server]") {
    const api::Api a(pipeline_session());
    const auto inv = get_json(a, "/api/gates/1");
    CHECK(inv["before_image"] == Json::parse("[[0,85],[170,255]]"));
    CHECK(inv["after_image"] == Json::parse("[[255,170],[85,0]]"));
    CHECK(inv["variation_grid"][0][0].get<double>() > 0.0);
    CHECK(inv["variation_grid"][1][1].get<double>() < 0.0);

    const auto broken = get_json(a, "/api/gates/2");
    for (const auto& row : broken["modality_grid"]) {
        for (const auto& cell : row) {
            CHECK(cell["tag"] == "uniform");
        }
    }
    CHECK(a.get("/api/gates/99").status == 404);
    CHECK(a.get("/api/gates/-1").status == 404);
    CHECK(a.get("/api/gates/abc").status == 400);
    CHECK(a.get("/api/nothing").status == 404);
}

TEST_CASE("pixel series", "[server]") {
    const api::Api a(pipeline_session());
    const auto j = get_json(a, "/api/pixels/0/0");
    REQUIRE(j["gates"].size() == 3);
    CHECK(j["gates"][0]["histogram"]["probs"][0] == 1.0);
    CHECK(j["gates"][1]["histogram"]["probs"][7] == 1.0);
    CHECK(j["gates"][1]["histogram"]["ranges"][7] == Json::array({224, 255}));
    for (const auto& p : j["gates"][2]["histogram"]["probs"]) {
        CHECK_THAT(p.get<double>(), WithinAbs(0.125, 1e-9));
    }
    const auto& top = j["gates"][0]["top_colors"];
    REQUIRE(top.size() == 1);
    CHECK(top[0]["color"] == 0);
    CHECK(top[0]["conditional"] == 1.0);
    CHECK_THAT(top[0]["joint"].get<double>(), WithinAbs(0.25, 1e-12));

    CHECK(a.get("/api/pixels/2/0").status == 400);
    CHECK(a.get("/api/pixels/0/0", {{"bins", "7"}}).status == 400);
    CHECK(a.get("/api/pixels/0/0", {{"bins", "x"}}).status == 400);
}

TEST_CASE("zero-mass pixel at the first gate", "[server]") {
    const NeqrLayout l(1, 2);
    const Circuit c(l, {{"Hrow", {BasicGate::h(l.row_qubit(0))}}});
    const api::Api a(std::make_shared<const api::Session>(api::Session::from_circuit(c)));
    const auto j = get_json(a, "/api/pixels/0/1", {{"bins", "4"}});
    CHECK(j["gates"][0]["histogram"]["probs"] == Json::array({0.0, 0.0, 0.0, 0.0}));
    CHECK(j["gates"][0]["top_colors"].empty());
}

TEST_CASE("other bin counts", "[server]") {
    const auto c = scenarios::broken_final_gate();
    const api::Api live(pipeline_session());
    const api::Api from_doc(std::make_shared<const api::Session>(
        api::Session::from_document(io::parse_analysis(io::serialize_analysis({c, simulate_and_analyze(c)})))));

    const auto j16 = get_json(live, "/api/pixels/1/1", {{"bins", "16"}});
    CHECK(j16["bins"] == 16);
    CHECK(j16["gates"][0]["histogram"]["probs"][15] == 1.0);
    CHECK(from_doc.get("/api/pixels/1/1", {{"bins", "16"}}).status == 400);

    // coarser bins: rebinned document histograms equal live binning
    const auto a = get_json(live, "/api/pixels/0/1", {{"bins", "4"}});
    const auto b = get_json(from_doc, "/api/pixels/0/1", {{"bins", "4"}});
    CHECK(a["gates"].size() == b["gates"].size());
    for (std::size_t i = 0; i < a["gates"].size(); ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK_THAT(a["gates"][i]["histogram"]["probs"][k].get<double>(),
                       WithinAbs(b["gates"][i]["histogram"]["probs"][k].get<double>(), 1e-12));
            CHECK_THAT(a["gates"][i]["signed_diff"][k].get<double>(),
                       WithinAbs(b["gates"][i]["signed_diff"][k].get<double>(), 1e-12));
        }
    }
}

TEST_CASE("responses match the exported document", "[server]") {
    const auto c = scenarios::broken_final_gate();
    const io::AnalysisDocument doc{c, simulate_and_analyze(c)};
    const auto exported = io::analysis_to_json(doc, false);
    const api::Api a(std::make_shared<const api::Session>(api::Session::from_document(io::parse_analysis(io::serialize_analysis(doc)))));
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const auto g = get_json(a, "/api/gates/" + std::to_string(i));
        CHECK(g["variation_grid"] == exported["gates"][i]["variation"]);
        CHECK(g["modality_grid"] == exported["gates"][i]["modality"]);
        CHECK(g["after_image"] == exported["gates"][i]["after_image"]);
    }
    const auto p = get_json(a, "/api/pixels/1/0");
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        CHECK(p["gates"][i]["histogram"]["probs"] == exported["gates"][i]["pixels"][2]["histogram"]);
        CHECK(p["gates"][i]["signed_diff"] == exported["gates"][i]["pixels"][2]["signed_diff"]);
    }
    // identical requests, identical bodies
    CHECK(a.get("/api/pixels/1/0") == a.get("/api/pixels/1/0"));
}

TEST_CASE("http transport", "[server][http]") {
    api::HttpServer server(pipeline_session());
    const int port = server.start_background();
    httplib::Client client("127.0.0.1", port);

    auto r = client.Get("/api/gates/1");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(r->body == api::Api(pipeline_session()).get("/api/gates/1").body);

    r = client.Get("/api/pixels/0/0?bins=4");
    REQUIRE(r);
    CHECK(Json::parse(r->body)["bins"] == 4);

    r = client.Get("/api/gates/99");
    REQUIRE(r);
    CHECK(r->status == 404);

    r = client.Get("/");
    REQUIRE(r);
    CHECK(r->body.find("/api/meta") != std::string::npos);

    // concurrent identical requests
    std::vector<std::future<std::string>> futures;
    for (int i = 0; i < 8; ++i) {
        futures.push_back(std::async(std::launch::async, [port] {
            httplib::Client c("127.0.0.1", port);
            auto res = c.Get("/api/pixels/1/1");
            return res ? res->body : std::string("<failed>");
        }));
    }
    const auto first = futures[0].get();
    CHECK(first != "<failed>");
    for (std::size_t i = 1; i < futures.size(); ++i) {
        CHECK(futures[i].get() == first);
    }
    server.stop();
}
