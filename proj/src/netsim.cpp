#include "pirpsi/netsim.hpp"

#include "pirpsi/construct.hpp"
#include "pirpsi/privacy.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <exception>

namespace pirpsi::net {

namespace {

constexpr std::size_t max_payload = 1u << 24;
constexpr std::uint8_t wire_version = 1;
const std::uint8_t magic[4] = {'P', 'P', 'S', 'I'};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return (static_cast<std::uint32_t>(p[0]) << 24) |
           (static_cast<std::uint32_t>(p[1]) << 16) |
           (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

const char* reason_name(error_reason r) {
    switch (r) {
        case error_reason::bad_magic: return "bad magic";
        case error_reason::bad_version: return "bad version";
        case error_reason::bad_payload: return "bad payload";
        case error_reason::out_of_bounds_bit: return "out-of-bounds bit";
    }
    return "unknown";
}

}  // namespace

// ---- frame codec ---------------------------------------------------------------

std::vector<std::uint8_t> encode_frame(const frame& f) {
    if (f.payload.size() > max_payload) throw scheme_error("payload too large");
    const std::uint32_t len = static_cast<std::uint32_t>(f.payload.size());
    std::vector<std::uint8_t> out(10 + f.payload.size());
    std::memcpy(out.data(), magic, 4);
    out[4] = f.version;
    out[5] = static_cast<std::uint8_t>(f.type);
    out[6] = static_cast<std::uint8_t>(len >> 24);
    out[7] = static_cast<std::uint8_t>(len >> 16);
    out[8] = static_cast<std::uint8_t>(len >> 8);
    out[9] = static_cast<std::uint8_t>(len);
    if (!f.payload.empty()) std::memcpy(out.data() + 10, f.payload.data(), f.payload.size());
    return out;
}

frame decode_frame(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 10 || std::memcmp(bytes.data(), magic, 4) != 0)
        throw frame_error(error_reason::bad_magic, "frame does not start with PPSI");
    if (bytes[4] != wire_version)
        throw frame_error(error_reason::bad_version,
                          "unsupported frame version " + std::to_string(bytes[4]));
    const std::uint8_t t = bytes[5];
    if (t < 1 || t > 3)
        throw frame_error(error_reason::bad_payload,
                          "unknown message type " + std::to_string(t));
    const std::uint32_t len = get_u32(bytes.data() + 6);
    if (len > max_payload || bytes.size() != 10 + static_cast<std::size_t>(len))
        throw frame_error(error_reason::bad_payload, "payload length mismatch");
    frame f;
    f.version = bytes[4];
    f.type = static_cast<msg_type>(t);
    f.payload.assign(bytes.begin() + 10, bytes.end());
    return f;
}

std::vector<std::uint8_t> encode_query_payload(int k, const query& q) {
    if (k < 1 || k > 255) throw scheme_error("k out of wire range");
    if (q.codewords.empty() || q.codewords.size() > 0xffff)
        throw scheme_error("codeword count out of wire range");
    std::vector<std::uint8_t> out;
    out.push_back(static_cast<std::uint8_t>(k));
    put_u16(out, static_cast<std::uint16_t>(q.codewords.size()));
    for (const auto& cw : q.codewords) {
        if (cw.empty() || cw.size() > 255)
            throw scheme_error("term count out of wire range");
        out.push_back(static_cast<std::uint8_t>(cw.size()));
        for (const auto& [m, i] : cw) {
            if (m < 1 || m > k) throw scheme_error("message id out of wire range");
            if (i < 1) throw scheme_error("bit index out of wire range");
            out.push_back(static_cast<std::uint8_t>(m));
            put_u32(out, static_cast<std::uint32_t>(i));
        }
    }
    return out;
}

std::pair<int, query> decode_query_payload(const std::vector<std::uint8_t>& payload) {
    std::size_t pos = 0;
    auto need = [&](std::size_t n) {
        if (payload.size() - pos < n)
            throw frame_error(error_reason::bad_payload, "query payload truncated");
    };
    need(3);
    const int k = payload[pos++];
    if (k < 1) throw frame_error(error_reason::bad_payload, "query with k = 0");
    const int count = get_u16(payload.data() + pos);
    pos += 2;
    if (count < 1)
        throw frame_error(error_reason::bad_payload, "query with no codewords");
    query q;
    for (int c = 0; c < count; ++c) {
        need(1);
        const int terms = payload[pos++];
        if (terms < 1)
            throw frame_error(error_reason::bad_payload, "codeword with no terms");
        codeword cw;
        for (int t = 0; t < terms; ++t) {
            need(5);
            const int m = payload[pos];
            const std::uint32_t i = get_u32(payload.data() + pos + 1);
            pos += 5;
            if (m < 1 || m > k)
                throw frame_error(error_reason::bad_payload,
                                  "message id exceeds k in query");
            if (i < 1)
                throw frame_error(error_reason::bad_payload, "bit index zero");
            if (cw.count(m))
                throw frame_error(error_reason::bad_payload,
                                  "duplicate message in codeword");
            cw[m] = static_cast<int>(i);
        }
        q.codewords.push_back(std::move(cw));
    }
    if (pos != payload.size())
        throw frame_error(error_reason::bad_payload, "trailing bytes in query payload");
    return {k, std::move(q)};
}

std::vector<std::uint8_t> encode_answer_payload(const answer_vector& ans) {
    if (ans.size() > 0xffff) throw scheme_error("answer too long for wire");
    std::vector<std::uint8_t> out;
    put_u16(out, static_cast<std::uint16_t>(ans.size()));
    out.resize(2 + (ans.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < ans.size(); ++i)
        if (ans[i]) out[2 + i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
}

answer_vector decode_answer_payload(const std::vector<std::uint8_t>& payload) {
    if (payload.size() < 2)
        throw frame_error(error_reason::bad_payload, "answer payload truncated");
    const std::size_t count = get_u16(payload.data());
    const std::size_t want = 2 + (count + 7) / 8;
    if (payload.size() != want)
        throw frame_error(error_reason::bad_payload, "answer payload length mismatch");
    answer_vector ans(count, 0);
    for (std::size_t i = 0; i < count; ++i)
        ans[i] = (payload[2 + i / 8] >> (7 - i % 8)) & 1;
    // padding bits must be zero
    for (std::size_t i = count; i < (payload.size() - 2) * 8; ++i)
        if ((payload[2 + i / 8] >> (7 - i % 8)) & 1)
            throw frame_error(error_reason::bad_payload, "nonzero padding bits");
    return ans;
}

frame make_error_frame(error_reason r) {
    frame f;
    f.type = msg_type::error;
    f.payload = {static_cast<std::uint8_t>(r)};
    return f;
}

// ---- byte_stream helpers ---------------------------------------------------------

bool byte_stream::read_exact(std::uint8_t* buf, std::size_t n) {
    std::size_t got = 0;
    while (got < n) {
        const std::size_t r = read_some(buf + got, n - got);
        if (r == 0) {
            if (got == 0) return false;
            throw scheme_error("stream ended mid-message");
        }
        got += r;
    }
    return true;
}

void write_frame(byte_stream& s, const frame& f) {
    const auto bytes = encode_frame(f);
    s.write_all(bytes.data(), bytes.size());
}

std::optional<frame> read_frame(byte_stream& s) {
    std::uint8_t header[10];
    if (!s.read_exact(header, 10)) return std::nullopt;
    if (std::memcmp(header, magic, 4) != 0)
        throw frame_error(error_reason::bad_magic, "frame does not start with PPSI");
    if (header[4] != wire_version)
        throw frame_error(error_reason::bad_version,
                          "unsupported frame version " + std::to_string(header[4]));
    if (header[5] < 1 || header[5] > 3)
        throw frame_error(error_reason::bad_payload,
                          "unknown message type " + std::to_string(header[5]));
    const std::uint32_t len = get_u32(header + 6);
    if (len > max_payload)
        throw frame_error(error_reason::bad_payload, "payload too large");
    frame f;
    f.version = header[4];
    f.type = static_cast<msg_type>(header[5]);
    f.payload.resize(len);
    if (len > 0 && !s.read_exact(f.payload.data(), len))
        throw scheme_error("stream ended mid-message");
    return f;
}

// ---- in-memory duplex ------------------------------------------------------------

namespace {

struct pipe_buf {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::uint8_t> data;
    bool closed = false;
};

class memory_stream final : public byte_stream {
  public:
    memory_stream(std::shared_ptr<pipe_buf> in, std::shared_ptr<pipe_buf> out)
        : in_(std::move(in)), out_(std::move(out)) {}
    ~memory_stream() override { close(); }

    std::size_t read_some(std::uint8_t* buf, std::size_t n) override {
        std::unique_lock<std::mutex> lk(in_->mu);
        in_->cv.wait(lk, [&] { return !in_->data.empty() || in_->closed; });
        if (in_->data.empty()) return 0;
        std::size_t got = 0;
        while (got < n && !in_->data.empty()) {
            buf[got++] = in_->data.front();
            in_->data.pop_front();
        }
        return got;
    }

    void write_all(const std::uint8_t* buf, std::size_t n) override {
        std::lock_guard<std::mutex> lk(out_->mu);
        if (out_->closed) throw scheme_error("channel closed");
        out_->data.insert(out_->data.end(), buf, buf + n);
        out_->cv.notify_all();
    }

    void close() override {
        {
            std::lock_guard<std::mutex> lk(out_->mu);
            out_->closed = true;
            out_->cv.notify_all();
        }
        {
            std::lock_guard<std::mutex> lk(in_->mu);
            in_->closed = true;
            in_->cv.notify_all();
        }
    }

  private:
    std::shared_ptr<pipe_buf> in_, out_;
};

}  // namespace

std::pair<std::unique_ptr<byte_stream>, std::unique_ptr<byte_stream>>
make_memory_duplex() {
    auto a = std::make_shared<pipe_buf>();
    auto b = std::make_shared<pipe_buf>();
    return {std::make_unique<memory_stream>(a, b),
            std::make_unique<memory_stream>(b, a)};
}

// ---- TCP transport ----------------------------------------------------------------

namespace {

class tcp_stream final : public byte_stream {
  public:
    explicit tcp_stream(int fd) : fd_(fd) {}
    ~tcp_stream() override { close(); }

    std::size_t read_some(std::uint8_t* buf, std::size_t n) override {
        while (true) {
            const ssize_t r = ::recv(fd_, buf, n, 0);
            if (r >= 0) return static_cast<std::size_t>(r);
            if (errno == EINTR) continue;
            return 0;  // treat connection reset as end of stream
        }
    }

    void write_all(const std::uint8_t* buf, std::size_t n) override {
        std::size_t sent = 0;
        while (sent < n) {
            const ssize_t r = ::send(fd_, buf + sent, n - sent, MSG_NOSIGNAL);
            if (r < 0) {
                if (errno == EINTR) continue;
                throw scheme_error("socket write failed");
            }
            sent += static_cast<std::size_t>(r);
        }
    }

    void close() override {
        int fd = fd_.exchange(-1);
        if (fd >= 0) {
            ::shutdown(fd, SHUT_RDWR);
            ::close(fd);
        }
    }

    void shutdown_only() {
        const int fd = fd_.load();
        if (fd >= 0) ::shutdown(fd, SHUT_RDWR);
    }

  private:
    std::atomic<int> fd_;
};

// "host:port", ":port", or "port"; host defaults to 127.0.0.1 and
// "localhost" is accepted as an alias.
std::pair<std::string, int> parse_endpoint(const std::string& endpoint) {
    std::string host = "127.0.0.1";
    std::string port_text = endpoint;
    const auto colon = endpoint.rfind(':');
    if (colon != std::string::npos) {
        if (colon > 0) host = endpoint.substr(0, colon);
        port_text = endpoint.substr(colon + 1);
    }
    if (host == "localhost") host = "127.0.0.1";
    if (port_text.empty() ||
        port_text.find_first_not_of("0123456789") != std::string::npos)
        throw scheme_error("bad endpoint (want host:port): " + endpoint);
    const int port = std::stoi(port_text);
    if (port < 0 || port > 65535) throw scheme_error("port out of range: " + endpoint);
    return {host, port};
}

sockaddr_in make_addr(const std::string& host, int port) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
        throw scheme_error("bad IPv4 address: " + host);
    return addr;
}

}  // namespace

std::unique_ptr<byte_stream> tcp_connect(const std::string& endpoint) {
    const auto [host, port] = parse_endpoint(endpoint);
    const sockaddr_in addr = make_addr(host, port);
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw scheme_error("cannot create socket");
    if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
        ::close(fd);
        throw scheme_error("cannot connect to " + endpoint);
    }
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    return std::make_unique<tcp_stream>(fd);
}

// ---- serving ----------------------------------------------------------------------

void serve_connection(const message_store& store, byte_stream& chan) {
    while (true) {
        std::optional<frame> f;
        try {
            f = read_frame(chan);
        } catch (const frame_error& e) {
            try {
                write_frame(chan, make_error_frame(e.reason));
            } catch (const scheme_error&) {
            }
            return;
        } catch (const scheme_error&) {
            return;  // peer vanished mid-frame
        }
        if (!f) return;  // clean close
        error_reason reason = error_reason::bad_payload;
        try {
            if (f->type != msg_type::query)
                throw frame_error(error_reason::bad_payload,
                                  "server accepts only QUERY frames");
            auto [k, q] = decode_query_payload(f->payload);
            if (k != store.k)
                throw frame_error(error_reason::bad_payload,
                                  "query k does not match the store");
            for (const auto& cw : q.codewords)
                for (const auto& [m, i] : cw)
                    if (m > store.k || i > store.message_len)
                        throw frame_error(error_reason::out_of_bounds_bit,
                                          "bit reference outside the store");
            const answer_vector ans = answer_query(store, q);
            frame reply;
            reply.type = msg_type::answer;
            reply.payload = encode_answer_payload(ans);
            write_frame(chan, reply);
            continue;
        } catch (const frame_error& e) {
            reason = e.reason;
        } catch (const scheme_error&) {
            reason = error_reason::bad_payload;
        }
        try {
            write_frame(chan, make_error_frame(reason));
        } catch (const scheme_error&) {
        }
        return;
    }
}

memory_server::memory_server(message_store store) : store_(std::move(store)) {
    store_.validate();
}

memory_server::~memory_server() {
    std::lock_guard<std::mutex> lk(mu_);
    for (auto& t : threads_)
        if (t.joinable()) t.join();
}

std::unique_ptr<byte_stream> memory_server::connect() {
    auto [client, server] = make_memory_duplex();
    std::shared_ptr<byte_stream> server_end(std::move(server));
    std::lock_guard<std::mutex> lk(mu_);
    threads_.emplace_back([this, server_end] {
        serve_connection(store_, *server_end);
        server_end->close();
    });
    return std::move(client);
}

struct tcp_server::impl {
    message_store store;
    int listen_fd = -1;
    std::thread acceptor;
    std::mutex mu;
    std::condition_variable stopped_cv;
    bool stopping = false;
    std::vector<std::thread> workers;
    std::vector<std::shared_ptr<tcp_stream>> conns;
};

tcp_server::tcp_server(message_store store, const std::string& endpoint)
    : impl_(std::make_unique<impl>()) {
    impl_->store = std::move(store);
    impl_->store.validate();
    const auto [host, port] = parse_endpoint(endpoint);
    const sockaddr_in addr = make_addr(host, port);
    impl_->listen_fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (impl_->listen_fd < 0) throw scheme_error("cannot create socket");
    const int one = 1;
    ::setsockopt(impl_->listen_fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(impl_->listen_fd, reinterpret_cast<const sockaddr*>(&addr),
               sizeof addr) != 0 ||
        ::listen(impl_->listen_fd, 16) != 0) {
        ::close(impl_->listen_fd);
        impl_->listen_fd = -1;
        throw scheme_error("cannot bind " + endpoint);
    }
    sockaddr_in bound{};
    socklen_t len = sizeof bound;
    if (::getsockname(impl_->listen_fd, reinterpret_cast<sockaddr*>(&bound), &len) != 0) {
        ::close(impl_->listen_fd);
        impl_->listen_fd = -1;
        throw scheme_error("cannot read bound port");
    }
    port_ = ntohs(bound.sin_port);
    impl_->acceptor = std::thread([im = impl_.get()] {
        while (true) {
            const int fd = ::accept(im->listen_fd, nullptr, nullptr);
            if (fd < 0) return;  // listener closed
            auto conn = std::make_shared<tcp_stream>(fd);
            std::lock_guard<std::mutex> lk(im->mu);
            if (im->stopping) return;
            im->conns.push_back(conn);
            im->workers.emplace_back([im, conn] {
                serve_connection(im->store, *conn);
                conn->close();
            });
        }
    });
}

std::string tcp_server::endpoint() const {
    return "127.0.0.1:" + std::to_string(port_);
}

void tcp_server::stop() {
    {
        std::lock_guard<std::mutex> lk(impl_->mu);
        if (impl_->stopping) return;
        impl_->stopping = true;
        for (auto& c : impl_->conns) c->shutdown_only();
    }
    if (impl_->listen_fd >= 0) {
        ::shutdown(impl_->listen_fd, SHUT_RDWR);
        ::close(impl_->listen_fd);
        impl_->listen_fd = -1;
    }
    if (impl_->acceptor.joinable()) impl_->acceptor.join();
    std::vector<std::thread> workers;
    {
        std::lock_guard<std::mutex> lk(impl_->mu);
        workers.swap(impl_->workers);
    }
    for (auto& t : workers)
        if (t.joinable()) t.join();
    impl_->stopped_cv.notify_all();
}

void tcp_server::wait() {
    std::unique_lock<std::mutex> lk(impl_->mu);
    impl_->stopped_cv.wait(lk, [&] { return impl_->stopping; });
}

tcp_server::~tcp_server() { stop(); }

// ---- client fetch -----------------------------------------------------------------

namespace {

answer_vector exchange_query(byte_stream& chan, int k, const query& q) {
    frame out;
    out.type = msg_type::query;
    out.payload = encode_query_payload(k, q);
    write_frame(chan, out);
    std::optional<frame> reply = read_frame(chan);
    if (!reply) throw scheme_error("server closed the connection without a reply");
    if (reply->type == msg_type::error) {
        const int reason = reply->payload.empty() ? 0 : reply->payload[0];
        std::string name = "unknown";
        if (reason >= 1 && reason <= 4)
            name = reason_name(static_cast<error_reason>(reason));
        throw scheme_error("server reported error: " + name + " (reason " +
                           std::to_string(reason) + ")");
    }
    if (reply->type != msg_type::answer)
        throw scheme_error("unexpected frame type from server");
    const answer_vector ans = decode_answer_payload(reply->payload);
    if (ans.size() != q.codewords.size())
        throw scheme_error("answer length mismatch: got " +
                           std::to_string(ans.size()) + " bits for " +
                           std::to_string(q.codewords.size()) + " codewords");
    return ans;
}

}  // namespace

fetch_result fetch_over(const stream_factory& db1, const stream_factory& db2,
                        const scheme_params& params, const si_bits& si) {
    params.validate();
    code c;
    c.params = params;
    c.query_n1 = build_query_n1(params.k);
    c.query_n2 = synthesize_n2(c.query_n1, params.k, params.demand, params.si);

    answer_vector ans1, ans2;
    std::exception_ptr err1, err2;
    std::thread t1([&] {
        try {
            auto chan = db1();
            ans1 = exchange_query(*chan, params.k, c.query_n1);
            chan->close();
        } catch (...) {
            err1 = std::current_exception();
        }
    });
    std::thread t2([&] {
        try {
            auto chan = db2();
            ans2 = exchange_query(*chan, params.k, c.query_n2);
            chan->close();
        } catch (...) {
            err2 = std::current_exception();
        }
    });
    t1.join();
    t2.join();
    if (err1) std::rethrow_exception(err1);
    if (err2) std::rethrow_exception(err2);

    fetch_result out;
    out.downloaded_bits_db1 = ans1.size();
    out.downloaded_bits_db2 = ans2.size();
    out.result = decode_demand(c, ans1, ans2, si);
    return out;
}

fetch_result fetch(const std::string& endpoint1, const std::string& endpoint2,
                   const scheme_params& params, const si_bits& si) {
    return fetch_over([&] { return tcp_connect(endpoint1); },
                      [&] { return tcp_connect(endpoint2); }, params, si);
}

}  // namespace pirpsi::net
