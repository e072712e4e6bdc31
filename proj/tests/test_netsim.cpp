#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pirpsi/construct.hpp"
#include "pirpsi/netsim.hpp"
#include "pirpsi/privacy.hpp"

#include <random>

using namespace pirpsi;
using namespace pirpsi::net;

namespace {

frame roundtrip(const frame& f) { return decode_frame(encode_frame(f)); }

// Raw header bytes for crafting malformed frames.
std::vector<std::uint8_t> raw_header(const char* magic4, std::uint8_t version,
                                     std::uint8_t type, std::uint32_t len) {
    std::vector<std::uint8_t> out(magic4, magic4 + 4);
    out.push_back(version);
    out.push_back(type);
    out.push_back(static_cast<std::uint8_t>(len >> 24));
    out.push_back(static_cast<std::uint8_t>((len >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((len >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>(len & 0xff));
    return out;
}

error_reason reason_of(byte_stream& chan) {
    const auto reply = read_frame(chan);
    REQUIRE(reply.has_value());
    REQUIRE(reply->type == msg_type::error);
    REQUIRE(reply->payload.size() == 1);
    return static_cast<error_reason>(reply->payload[0]);
}

}  // namespace

TEST_CASE("frame encode/decode identity") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        frame f;
        f.type = static_cast<msg_type>(1 + trial % 3);
        f.payload.resize(rng() % 300);
        for (auto& b : f.payload) b = static_cast<std::uint8_t>(rng());
        CHECK(roundtrip(f) == f);
    }
    frame empty;
    empty.type = msg_type::answer;
    CHECK(roundtrip(empty) == empty);
}

TEST_CASE("frame decoding rejects malformed bytes") {
    SUBCASE("bad magic") {
        const auto bytes = raw_header("XXXX", 1, 1, 0);
        CHECK_THROWS_AS(decode_frame(bytes), frame_error);
        try {
            decode_frame(bytes);
        } catch (const frame_error& e) {
            CHECK(e.reason == error_reason::bad_magic);
        }
    }
    SUBCASE("bad version") {
        const auto bytes = raw_header("PPSI", 9, 1, 0);
        try {
            decode_frame(bytes);
            FAIL("expected frame_error");
        } catch (const frame_error& e) {
            CHECK(e.reason == error_reason::bad_version);
        }
    }
    SUBCASE("unknown message type") {
        const auto bytes = raw_header("PPSI", 1, 7, 0);
        try {
            decode_frame(bytes);
            FAIL("expected frame_error");
        } catch (const frame_error& e) {
            CHECK(e.reason == error_reason::bad_payload);
        }
    }
    SUBCASE("length mismatch") {
        auto bytes = raw_header("PPSI", 1, 2, 5);  // claims 5 payload bytes, has 0
        try {
            decode_frame(bytes);
            FAIL("expected frame_error");
        } catch (const frame_error& e) {
            CHECK(e.reason == error_reason::bad_payload);
        }
    }
}

TEST_CASE("query payload round trip") {
    const query n1 = build_query_n1(4);
    const auto payload = encode_query_payload(4, n1);
    const auto [k, q] = decode_query_payload(payload);
    CHECK(k == 4);
    CHECK(q == n1);

    SUBCASE("message id beyond k is rejected") {
        auto bad = payload;
        bad[3 + 1] = 9;  // first codeword's first term message id
        CHECK_THROWS_AS(decode_query_payload(bad), frame_error);
    }
    SUBCASE("truncation is rejected") {
        auto bad = payload;
        bad.pop_back();
        CHECK_THROWS_AS(decode_query_payload(bad), frame_error);
    }
    SUBCASE("trailing bytes are rejected") {
        auto bad = payload;
        bad.push_back(0);
        CHECK_THROWS_AS(decode_query_payload(bad), frame_error);
    }
}

TEST_CASE("answer payload round trip and packing") {
    const answer_vector seven{1, 0, 1, 1, 0, 0, 1};
    const auto payload = encode_answer_payload(seven);
    // 2-byte count + 7 bits packed into a single byte
    CHECK(payload.size() == 3);
    CHECK(payload[2] == 0b10110010);
    CHECK(decode_answer_payload(payload) == seven);

    SUBCASE("nonzero padding is rejected") {
        auto bad = payload;
        bad[2] |= 1;  // the 8th (padding) bit
        CHECK_THROWS_AS(decode_answer_payload(bad), frame_error);
    }
    SUBCASE("length mismatch is rejected") {
        auto bad = payload;
        bad.push_back(0);
        CHECK_THROWS_AS(decode_answer_payload(bad), frame_error);
    }
}

TEST_CASE("in-memory duplex carries bytes both ways") {
    auto [a, b] = make_memory_duplex();
    const std::uint8_t ping[3] = {1, 2, 3};
    a->write_all(ping, 3);
    std::uint8_t buf[3] = {};
    CHECK(b->read_exact(buf, 3));
    CHECK(buf[2] == 3);
    b->write_all(buf, 3);
    std::uint8_t back[3] = {};
    CHECK(a->read_exact(back, 3));
    CHECK(back[0] == 1);
    a->close();
    CHECK_FALSE(b->read_exact(buf, 1));  // clean end of stream
}

TEST_CASE("server answers a valid query") {
    const message_store store = random_store(4, 21);
    memory_server server(store);
    auto chan = server.connect();

    frame f;
    f.type = msg_type::query;
    f.payload = encode_query_payload(4, build_query_n1(4));
    write_frame(*chan, f);
    const auto reply = read_frame(*chan);
    REQUIRE(reply.has_value());
    CHECK(reply->type == msg_type::answer);
    // 7 answer bits -> 2-byte count + 1 packed byte
    CHECK(reply->payload.size() == 3);
    CHECK(decode_answer_payload(reply->payload) ==
          answer_query(store, build_query_n1(4)));
}

TEST_CASE("server reports malformed frames with reason codes") {
    const message_store store = random_store(4, 22);

    SUBCASE("bad magic -> reason 1") {
        memory_server server(store);
        auto chan = server.connect();
        const auto bytes = raw_header("XXXX", 1, 1, 0);
        chan->write_all(bytes.data(), bytes.size());
        CHECK(reason_of(*chan) == error_reason::bad_magic);
    }
    SUBCASE("bad version -> reason 2") {
        memory_server server(store);
        auto chan = server.connect();
        const auto bytes = raw_header("PPSI", 3, 1, 0);
        chan->write_all(bytes.data(), bytes.size());
        CHECK(reason_of(*chan) == error_reason::bad_version);
    }
    SUBCASE("garbage payload -> reason 3") {
        memory_server server(store);
        auto chan = server.connect();
        auto bytes = raw_header("PPSI", 1, 1, 3);
        bytes.insert(bytes.end(), {0xff, 0xff, 0xff});
        chan->write_all(bytes.data(), bytes.size());
        CHECK(reason_of(*chan) == error_reason::bad_payload);
    }
    SUBCASE("answer frame sent to a server -> reason 3") {
        memory_server server(store);
        auto chan = server.connect();
        frame f;
        f.type = msg_type::answer;
        f.payload = encode_answer_payload({1});
        write_frame(*chan, f);
        CHECK(reason_of(*chan) == error_reason::bad_payload);
    }
    SUBCASE("k mismatch -> reason 3") {
        memory_server server(store);
        auto chan = server.connect();
        frame f;
        f.type = msg_type::query;
        f.payload = encode_query_payload(5, build_query_n1(5));
        write_frame(*chan, f);
        CHECK(reason_of(*chan) == error_reason::bad_payload);
    }
    SUBCASE("out-of-bounds bit -> reason 4") {
        memory_server server(store);
        auto chan = server.connect();
        query q = build_query_n1(4);
        q.codewords[0][1] = msg_len(4) + 1;  // 2^(K-1)+1
        frame f;
        f.type = msg_type::query;
        f.payload = encode_query_payload(4, q);
        write_frame(*chan, f);
        CHECK(reason_of(*chan) == error_reason::out_of_bounds_bit);
    }
}

TEST_CASE("a thousand query round trips on one connection") {
    const message_store store = random_store(4, 23);
    memory_server server(store);
    auto chan = server.connect();
    const query n1 = build_query_n1(4);
    const answer_vector want = answer_query(store, n1);
    frame f;
    f.type = msg_type::query;
    f.payload = encode_query_payload(4, n1);
    for (int i = 0; i < 1000; ++i) {
        write_frame(*chan, f);
        const auto reply = read_frame(*chan);
        REQUIRE(reply.has_value());
        REQUIRE(reply->type == msg_type::answer);
        REQUIRE(decode_answer_payload(reply->payload) == want);
    }
}

TEST_CASE("in-memory fetch equals direct decode") {
    for (int k = 4; k <= 5; ++k) {
        CAPTURE(k);
        const message_store store = random_store(k, 31 + static_cast<std::uint64_t>(k));
        memory_server db1(store);
        memory_server db2(store);
        const scheme_params params = make_params(k, 2, 1, k);
        const si_bits si = si_from_store(store, params);
        const fetch_result res =
            fetch_over([&] { return db1.connect(); }, [&] { return db2.connect(); },
                       params, si);
        CHECK(res.result.demand_bits == store.bits[1]);
        CHECK(res.downloaded_bits_db1 == static_cast<std::size_t>((1 << (k - 1)) - 1));
        CHECK(res.downloaded_bits_db2 == static_cast<std::size_t>((1 << (k - 1)) - 1));
    }
}

TEST_CASE("per-database download matches the closed form") {
    for (int k = 4; k <= 7; ++k) {
        CAPTURE(k);
        const message_store store = random_store(k, 41 + static_cast<std::uint64_t>(k));
        memory_server db1(store);
        memory_server db2(store);
        const scheme_params params = make_params(k, 1, 2, 3);
        const fetch_result res =
            fetch_over([&] { return db1.connect(); }, [&] { return db2.connect(); },
                       params, si_from_store(store, params));
        CHECK(res.downloaded_bits_db1 == static_cast<std::size_t>((1 << (k - 1)) - 1));
        CHECK(res.downloaded_bits_db2 == static_cast<std::size_t>((1 << (k - 1)) - 1));
        CHECK(res.result.demand_bits == store.bits[0]);
    }
}

TEST_CASE("fetch fails cleanly when a server misbehaves") {
    const message_store store = random_store(4, 51);
    memory_server good(store);

    SUBCASE("second database unreachable") {
        CHECK_THROWS_AS(fetch_over([&] { return good.connect(); },
                                   []() -> std::unique_ptr<byte_stream> {
                                       throw scheme_error("connection refused");
                                   },
                                   make_params(4, 1, 2, 3), si_from_store(store, make_params(4, 1, 2, 3))),
                        scheme_error);
    }
    SUBCASE("store mismatch surfaces as an error frame") {
        const message_store other = random_store(5, 52);
        memory_server wrong(other);
        CHECK_THROWS_AS(fetch_over([&] { return good.connect(); },
                                   [&] { return wrong.connect(); },
                                   make_params(4, 1, 2, 3), si_from_store(store, make_params(4, 1, 2, 3))),
                        scheme_error);
    }
}

TEST_CASE("tcp transport smoke test") {
    const message_store store = random_store(4, 61);
    tcp_server db1(store, "127.0.0.1:0");
    tcp_server db2(store, "127.0.0.1:0");
    REQUIRE(db1.port() > 0);
    REQUIRE(db2.port() > 0);
    const scheme_params params = make_params(4, 3, 2, 4);
    const si_bits si = si_from_store(store, params);
    const fetch_result res = fetch(db1.endpoint(), db2.endpoint(), params, si);
    CHECK(res.result.demand_bits == store.bits[2]);
    db1.stop();
    db2.stop();

    SUBCASE("connecting to a stopped server fails") {
        CHECK_THROWS_AS(fetch(db1.endpoint(), db2.endpoint(), params, si),
                        scheme_error);
    }
}

TEST_CASE("endpoint parsing") {
    CHECK_THROWS_AS(tcp_connect("no-port"), scheme_error);
    CHECK_THROWS_AS(tcp_connect("127.0.0.1:notaport"), scheme_error);
    CHECK_THROWS_AS(tcp_connect("127.0.0.1:99999"), scheme_error);
}
