#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pirpsi/construct.hpp"
#include "pirpsi/privacy.hpp"
#include "pirpsi/retrieve.hpp"
#include "pirpsi/storage.hpp"

#include "fixtures.hpp"
#include "json.hpp"

using namespace pirpsi;

namespace {

bool code_equal(const code& a, const code& b) {
    return a.params.k == b.params.k && a.params.demand == b.params.demand &&
           a.params.si == b.params.si && a.query_n1 == b.query_n1 &&
           a.query_n2 == b.query_n2;
}

code synthesized_code(int k, int demand, int a, int b) {
    code c;
    c.params = make_params(k, demand, a, b);
    c.query_n1 = build_query_n1(k);
    c.query_n2 = synthesize_n2(c.query_n1, k, demand, {a, b});
    return c;
}

}  // namespace

TEST_CASE("code document round trip") {
    for (int k = 3; k <= 7; ++k) {
        CAPTURE(k);
        const code c = build_canonical_code(k);
        CHECK(code_equal(code_from_json(code_to_json(c)), c));
    }
    const code synth = synthesized_code(7, 7, 3, 4);
    CHECK(code_equal(code_from_json(code_to_json(synth)), synth));
}

TEST_CASE("K=7 document carries 63+63 codewords") {
    const nlohmann::json doc = nlohmann::json::parse(code_to_json(build_canonical_code(7)));
    CHECK(doc["queries"][0].size() == 63);
    CHECK(doc["queries"][1].size() == 63);
}

TEST_CASE("document loading rejects violations") {
    nlohmann::json doc = nlohmann::json::parse(code_to_json(build_canonical_code(4)));

    SUBCASE("wrong version") {
        doc["format_version"] = 2;
        CHECK_THROWS_AS(code_from_json(doc.dump()), scheme_error);
    }
    SUBCASE("missing field") {
        doc.erase("queries");
        CHECK_THROWS_AS(code_from_json(doc.dump()), scheme_error);
    }
    SUBCASE("one database only") {
        doc["queries"].erase(1);
        CHECK_THROWS_AS(code_from_json(doc.dump()), scheme_error);
    }
    SUBCASE("duplicate bit reference") {
        doc["queries"][0][0] = doc["queries"][0][1];
        CHECK_THROWS_AS(code_from_json(doc.dump()), scheme_error);
    }
    SUBCASE("byproduct index beyond the first half") {
        // message 4 (not demand, not SI) may only use indexes 1..4 at K=4
        doc["queries"][0][3][1] = nlohmann::json::array({4, 5});
        CHECK_THROWS_AS(code_from_json(doc.dump()), scheme_error);
    }
    SUBCASE("demand index beyond the message length") {
        doc["queries"][1][0][0] = nlohmann::json::array({1, 9});
        CHECK_THROWS_AS(code_from_json(doc.dump()), scheme_error);
    }
    SUBCASE("invalid parameter triple") {
        doc["demand"] = 2;  // collides with si {2,3}
        CHECK_THROWS_AS(code_from_json(doc.dump()), scheme_error);
    }
    SUBCASE("not json at all") {
        CHECK_THROWS_AS(code_from_json("not a document"), scheme_error);
    }
}

TEST_CASE("message file golden bytes") {
    // X1 = [1,0], X2 = [0,1], X3 = [1,1]
    message_store store;
    store.k = 3;
    store.message_len = 2;
    store.bits = {{1, 0}, {0, 1}, {1, 1}};
    const std::vector<std::uint8_t> want{0x50, 0x4D, 0x53, 0x47, 0x00, 0x03, 0x00,
                                         0x00, 0x00, 0x02, 0x80, 0x40, 0xC0};
    CHECK(messages_to_bytes(store) == want);
    const message_store back = messages_from_bytes(want);
    CHECK(back.k == 3);
    CHECK(back.message_len == 2);
    CHECK(back.bits == store.bits);
}

TEST_CASE("message file size and round trip") {
    for (int k = 3; k <= 10; ++k) {
        CAPTURE(k);
        const message_store store = random_store(k, 50 + static_cast<std::uint64_t>(k));
        const auto bytes = messages_to_bytes(store);
        const std::size_t row_bytes = static_cast<std::size_t>((msg_len(k) + 7) / 8);
        CHECK(bytes.size() == 10 + static_cast<std::size_t>(k) * row_bytes);
        const message_store back = messages_from_bytes(bytes);
        CHECK(back.k == store.k);
        CHECK(back.message_len == store.message_len);
        CHECK(back.bits == store.bits);
    }
}

TEST_CASE("message file rejects malformed bytes") {
    const message_store store = random_store(4, 9);
    auto bytes = messages_to_bytes(store);

    SUBCASE("bad magic") {
        bytes[0] = 'X';
        CHECK_THROWS_AS(messages_from_bytes(bytes), scheme_error);
    }
    SUBCASE("truncated") {
        bytes.pop_back();
        CHECK_THROWS_AS(messages_from_bytes(bytes), scheme_error);
    }
    SUBCASE("trailing garbage") {
        bytes.push_back(0);
        CHECK_THROWS_AS(messages_from_bytes(bytes), scheme_error);
    }
    SUBCASE("too short for a header") {
        bytes.resize(6);
        CHECK_THROWS_AS(messages_from_bytes(bytes), scheme_error);
    }
}

TEST_CASE("message file persists through disk") {
    const std::string path = "/tmp/pirpsi_storage_test.pmsg";
    const message_store store = random_store(5, 77);
    save_messages(store, path);
    const message_store back = load_messages(path);
    CHECK(back.bits == store.bits);
}

TEST_CASE("code document persists through disk") {
    const std::string path = "/tmp/pirpsi_storage_test.code.json";
    const code c = synthesized_code(5, 5, 1, 3);
    save_code(c, path);
    CHECK(code_equal(load_code(path), c));
}

TEST_CASE("query text parsing") {
    SUBCASE("two codewords") {
        const query q = parse_query_text("A1\nA2+B1");
        REQUIRE(q.codewords.size() == 2);
        CHECK(q.codewords[0] == codeword{{1, 1}});
        CHECK(q.codewords[1] == codeword{{1, 2}, {2, 1}});
    }
    SUBCASE("full K=4 fixture equals the construction") {
        CHECK(parse_query_text(fixtures::k4_n1) == build_query_n1(4));
    }
    SUBCASE("general message form") {
        const query q = parse_query_text("M8_3+A1");
        CHECK(q.codewords[0] == codeword{{1, 1}, {8, 3}});
    }
    SUBCASE("missing index") {
        CHECK_THROWS_AS(parse_query_text("A+B"), scheme_error);
    }
    SUBCASE("unknown letter") {
        CHECK_THROWS_AS(parse_query_text("H1"), scheme_error);
    }
    SUBCASE("duplicate message in a codeword") {
        CHECK_THROWS_AS(parse_query_text("A1+A2"), scheme_error);
    }
    SUBCASE("trailing plus") {
        CHECK_THROWS_AS(parse_query_text("A1+"), scheme_error);
    }
    SUBCASE("empty text") {
        CHECK_THROWS_AS(parse_query_text(""), scheme_error);
    }
}

TEST_CASE("render and parse are inverse on constructed queries") {
    for (int k = 3; k <= 10; ++k) {
        CAPTURE(k);
        const query n1 = build_query_n1(k);
        CHECK(parse_query_text(render(n1)) == n1);
        const query n2 = build_query_n2(n1, make_params(k, 1, 2, 3));
        CHECK(parse_query_text(render(n2)) == n2);
    }
}

TEST_CASE("answer json round trip") {
    const answer_vector ans{1, 0, 1, 1, 0};
    CHECK(answer_from_json(answer_to_json(ans)) == ans);
    CHECK(answer_from_json("{\"bits\":[]}").empty());
    CHECK_THROWS_AS(answer_from_json("{}"), scheme_error);
    CHECK_THROWS_AS(answer_from_json("{\"bits\":[2]}"), scheme_error);
    CHECK_THROWS_AS(answer_from_json("nonsense"), scheme_error);
}

TEST_CASE("si bits json round trip") {
    const message_store store = random_store(4, 3);
    const si_bits si = si_from_store(store, make_params(4, 1, 2, 3));
    const si_bits back = si_bits_from_json(si_bits_to_json(si));
    CHECK(back.rows == si.rows);
    CHECK_THROWS_AS(si_bits_from_json("{\"rows\":{\"x\":[1]}}"), scheme_error);
    CHECK_THROWS_AS(si_bits_from_json("{\"rows\":{\"2\":[3]}}"), scheme_error);
    CHECK_THROWS_AS(si_bits_from_json("[]"), scheme_error);
}

TEST_CASE("audit report json mirror") {
    const audit_report rep = audit_privacy(4);
    const nlohmann::json doc = nlohmann::json::parse(audit_to_json(rep));
    CHECK(doc["k"] == 4);
    CHECK(doc["all_pass"] == true);
    CHECK(doc["entries"].size() == 12);
    CHECK(doc["entries"][0].contains("case"));
    CHECK(doc["entries"][0]["pass"] == true);
}
