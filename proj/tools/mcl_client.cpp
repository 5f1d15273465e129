// mcl-client: fetches one url from mcl-server and renders it per media type.
//
// Exit codes: 0 success, 2 not found, 3 unsupported media, 4 modification
// failed, 5 delivery failed, 6 content parse/validation error.
#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <iostream>

#include <CLI11.hpp>

#include "mcl/client.hpp"
#include "mcl/deframe.hpp"
#include "mcl/errors.hpp"
#include "mcl/session.hpp"

namespace {

uint64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

int connect_to(const std::string& host, uint16_t port) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) return -1;
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1 ||
        ::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        ::close(fd);
        return -1;
    }
    timeval tv{0, 20000};
    setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    return fd;
}

bool send_all(int fd, const mcl::Bytes& data) {
    size_t off = 0;
    while (off < data.size()) {
        ssize_t n = ::send(fd, data.data() + off, data.size() - off, 0);
        if (n <= 0) return false;
        off += static_cast<size_t>(n);
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MCL content client"};
    auto* fetch = app.add_subcommand("fetch", "fetch one url");
    std::string url, host = "127.0.0.1", profile_path, modify, grammar_path, out_dir = ".";
    std::string quality = "high";
    uint16_t port = 7717;
    uint64_t timeout_s = 30;
    fetch->add_option("url", url, "content url")->required();
    fetch->add_option("--host", host, "server address");
    fetch->add_option("--port", port, "server port");
    fetch->add_option("--profile", profile_path, "device profile file")
        ->required()
        ->check(CLI::ExistingFile);
    fetch->add_option("--modify", modify, "modification spec, e.g. truncate:100,to_upper:0");
    fetch->add_option("--grammar", grammar_path, "grammar file for data content")
        ->check(CLI::ExistingFile);
    fetch->add_option("--out", out_dir, "output directory for image/voice payloads");
    fetch->add_option("--quality", quality, "reported link quality: high|medium|low");
    fetch->add_option("--timeout", timeout_s, "give up after this many seconds");
    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    mcl::ContentRequest req;
    req.url = url;
    try {
        req.profile = mcl::client::load_profile_file(profile_path);
        if (!modify.empty()) req.mod_spec = mcl::client::parse_mod_spec(modify);
        auto q = mcl::quality_from_string(quality);
        if (!q) throw mcl::IoError("unknown quality: " + quality);
        req.net.quality = *q;
    } catch (const mcl::IoError& e) {
        std::cerr << "mcl-client: " << e.what() << "\n";
        return 6;
    }

    int fd = connect_to(host, port);
    if (fd < 0) {
        std::cerr << "mcl-client: cannot connect to " << host << ":" << port << "\n";
        return 5;
    }

    mcl::client::Session session(req);
    mcl::Deframer deframer;
    uint64_t deadline = now_ms() + timeout_s * 1000;
    uint8_t buf[16384];
    while (!session.done() && now_ms() < deadline) {
        for (mcl::Frame& f : session.take_outgoing())
            if (!send_all(fd, mcl::encode_frame(f))) break;
        ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
        uint64_t now = now_ms();
        if (n == 0) break;
        if (n > 0) {
            try {
                for (const mcl::Frame& f : deframer.feed(buf, static_cast<size_t>(n)))
                    session.on_frame(f, now);
            } catch (const mcl::CodecError& e) {
                std::cerr << "mcl-client: corrupt stream: " << e.what() << "\n";
                ::close(fd);
                return 5;
            }
        } else if (errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
            break;
        }
        session.on_tick(now);
    }
    for (mcl::Frame& f : session.take_outgoing()) send_all(fd, mcl::encode_frame(f));
    ::close(fd);

    const mcl::client::FetchResult& res = session.result();
    using mcl::client::FetchOutcome;
    switch (res.outcome) {
        case FetchOutcome::Success: break;
        case FetchOutcome::NotFound:
            std::cerr << "mcl-client: not found: " << url << "\n";
            return 2;
        case FetchOutcome::UnsupportedMedia:
            std::cerr << "mcl-client: unsupported media: " << res.error_message << "\n";
            return 3;
        case FetchOutcome::ModFailed:
            std::cerr << "mcl-client: modification failed: " << res.error_message << "\n";
            return 4;
        default:
            std::cerr << "mcl-client: delivery failed\n";
            return 5;
    }

    try {
        mcl::parse::DtdGrammar grammar;
        if (res.item.media == mcl::MediaType::Data) {
            if (grammar_path.empty()) {
                std::cerr << "mcl-client: data content needs --grammar\n";
                return 6;
            }
            grammar = mcl::parse::load_grammar_file(grammar_path);
        }
        auto shown = mcl::client::media_dispatch(res.item, grammar, out_dir);
        switch (shown.media) {
            case mcl::MediaType::Data: std::cout << shown.canonical << "\n"; break;
            case mcl::MediaType::Graph: std::cout << shown.points.to_csv(); break;
            default: std::cout << shown.out_file.string() << "\n"; break;
        }
    } catch (const std::exception& e) {
        std::cerr << "mcl-client: content rejected: " << e.what() << "\n";
        return 6;
    }
    return 0;
}
