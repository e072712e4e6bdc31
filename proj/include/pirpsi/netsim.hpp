#pragma once

#include "pirpsi/core.hpp"
#include "pirpsi/retrieve.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace pirpsi::net {

// ---- wire format -------------------------------------------------------------
// Frame: magic "PPSI" (4 bytes), version (1 byte, =1), msg_type (1 byte),
// payload_len (32-bit big-endian), payload.
// QueryPayload: k (1 byte), codeword_count (16-bit BE), then per codeword a
// term_count byte followed by (message_id byte, bit_index 32-bit BE) terms.
// AnswerPayload: bit_count (16-bit BE), packed bits MSB-first.
// Error payload: one reason byte.

enum class msg_type : std::uint8_t { query = 1, answer = 2, error = 3 };

enum class error_reason : std::uint8_t {
    bad_magic = 1,
    bad_version = 2,
    bad_payload = 3,
    out_of_bounds_bit = 4,
};

struct frame {
    std::uint8_t version = 1;
    msg_type type = msg_type::query;
    std::vector<std::uint8_t> payload;

    friend bool operator==(const frame&, const frame&) = default;
};

// Malformed input on the wire; `reason` is what a server reports back.
struct frame_error : scheme_error {
    error_reason reason;
    frame_error(error_reason r, const std::string& what)
        : scheme_error(what), reason(r) {}
};

std::vector<std::uint8_t> encode_frame(const frame& f);
frame decode_frame(const std::vector<std::uint8_t>& bytes);  // throws frame_error

std::vector<std::uint8_t> encode_query_payload(int k, const query& q);
std::pair<int, query> decode_query_payload(const std::vector<std::uint8_t>& payload);
std::vector<std::uint8_t> encode_answer_payload(const answer_vector& ans);
answer_vector decode_answer_payload(const std::vector<std::uint8_t>& payload);
frame make_error_frame(error_reason r);

// ---- transport ----------------------------------------------------------------

// Bidirectional byte stream; implemented by an in-memory duplex channel (for
// deterministic tests) and by TCP sockets (for the CLI).
class byte_stream {
  public:
    virtual ~byte_stream() = default;
    // Returns bytes read (<= n); 0 means end of stream.
    virtual std::size_t read_some(std::uint8_t* buf, std::size_t n) = 0;
    virtual void write_all(const std::uint8_t* buf, std::size_t n) = 0;
    virtual void close() = 0;

    // False on clean end-of-stream before any byte; throws if the stream ends
    // mid-read.
    bool read_exact(std::uint8_t* buf, std::size_t n);
};

// Two connected in-memory streams (what one writes, the other reads).
std::pair<std::unique_ptr<byte_stream>, std::unique_ptr<byte_stream>>
make_memory_duplex();

std::unique_ptr<byte_stream> tcp_connect(const std::string& endpoint);

// ---- frame I/O over a stream ----------------------------------------------------

void write_frame(byte_stream& s, const frame& f);
// Empty optional on clean end-of-stream; throws frame_error on malformed bytes.
std::optional<frame> read_frame(byte_stream& s);

// ---- servers --------------------------------------------------------------------

// Answers QUERY frames on one connection until it closes.  Malformed frames
// and out-of-range queries get an ERROR frame, after which the connection is
// closed.  The server sees only its own connection and the replicated store —
// it never learns anything about the other database's query.
void serve_connection(const message_store& store, byte_stream& chan);

// In-memory two-database host for tests: each connect() hands back a client
// stream whose peer is served on a dedicated thread.
class memory_server {
  public:
    explicit memory_server(message_store store);
    ~memory_server();
    memory_server(const memory_server&) = delete;
    memory_server& operator=(const memory_server&) = delete;

    std::unique_ptr<byte_stream> connect();

  private:
    message_store store_;
    std::mutex mu_;
    std::vector<std::thread> threads_;
};

// TCP server: binds, accepts in a background thread, serves each connection
// on its own thread over the immutable store.
class tcp_server {
  public:
    // endpoint: "host:port" or ":port" or "port"; port 0 picks a free port.
    tcp_server(message_store store, const std::string& endpoint);
    ~tcp_server();
    tcp_server(const tcp_server&) = delete;
    tcp_server& operator=(const tcp_server&) = delete;

    int port() const { return port_; }
    std::string endpoint() const;
    void stop();
    void wait();  // blocks until stop() is called from elsewhere

  private:
    struct impl;
    std::unique_ptr<impl> impl_;
    int port_ = 0;
};

// ---- client ---------------------------------------------------------------------

using stream_factory = std::function<std::unique_ptr<byte_stream>()>;

struct fetch_result {
    decode_result result;
    std::size_t downloaded_bits_db1 = 0;
    std::size_t downloaded_bits_db2 = 0;
};

// Builds the two queries for `params`, sends the first to database 1 and the
// second to database 2 concurrently, and decodes the demand message.  Throws
// on transport failure, ERROR frames, or answer-length mismatch; never
// returns a partial result.
fetch_result fetch_over(const stream_factory& db1, const stream_factory& db2,
                        const scheme_params& params, const si_bits& si);

fetch_result fetch(const std::string& endpoint1, const std::string& endpoint2,
                   const scheme_params& params, const si_bits& si);

}  // namespace pirpsi::net
