// mcl-server: serves a warehouse snapshot over TCP, one frame stream per
// connection.
#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstring>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mcl/deframe.hpp"
#include "mcl/endpoint.hpp"
#include "mcl/errors.hpp"

namespace {

std::mutex g_log_mutex;
std::atomic<bool> g_stop{false};

uint64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

void log_line(const std::string& line) {
    std::lock_guard<std::mutex> lk(g_log_mutex);
    std::cout << line << std::endl;
}

bool send_all(int fd, const mcl::Bytes& data) {
    size_t off = 0;
    while (off < data.size()) {
        ssize_t n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
        if (n <= 0) return false;
        off += static_cast<size_t>(n);
    }
    return true;
}

void serve_connection(int fd, mcl::Warehouse& store) {
    mcl::server::Endpoint endpoint(store);
    mcl::Deframer deframer;
    size_t logged = 0;

    timeval tv{0, 20000};  // 20ms poll so the ARQ tick keeps running
    setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));

    uint8_t buf[16384];
    bool open = true;
    while (open && !g_stop) {
        ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
        uint64_t now = now_ms();
        if (n == 0) {
            open = false;
        } else if (n < 0) {
            if (errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) open = false;
        } else {
            try {
                for (const mcl::Frame& f : deframer.feed(buf, static_cast<size_t>(n)))
                    endpoint.on_frame(f, now);
            } catch (const mcl::CodecError& e) {
                log_line(std::string("conn error=codec detail=\"") + e.what() + "\"");
                open = false;
            }
        }
        endpoint.on_tick(now);
        for (mcl::Frame& f : endpoint.take_outgoing())
            if (!send_all(fd, mcl::encode_frame(f))) open = false;
        for (; logged < endpoint.log().size(); ++logged) {
            const auto& entry = endpoint.log()[logged];
            if (entry.outcome.empty()) break;  // still in flight, report later
            log_line("request url=" + entry.url + " outcome=" + entry.outcome +
                     " chunks=" + std::to_string(entry.chunks) +
                     " retransmissions=" + std::to_string(entry.retransmissions));
        }
    }
    for (; logged < endpoint.log().size(); ++logged) {
        const auto& entry = endpoint.log()[logged];
        log_line("request url=" + entry.url + " outcome=" +
                 (entry.outcome.empty() ? "interrupted" : entry.outcome) +
                 " chunks=" + std::to_string(entry.chunks) +
                 " retransmissions=" + std::to_string(entry.retransmissions));
    }
    ::close(fd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MCL content server"};
    std::string snapshot_path;
    uint16_t port = 7717;
    app.add_option("--snapshot", snapshot_path, "warehouse snapshot file")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--port", port, "TCP port");
    CLI11_PARSE(app, argc, argv);

    mcl::Warehouse store(1);
    try {
        store = mcl::Warehouse::snapshot_load(snapshot_path);
    } catch (const mcl::SnapshotError& e) {
        std::cerr << "mcl-server: " << e.what() << "\n";
        return 1;
    }

    int listener = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listener < 0) {
        std::cerr << "mcl-server: socket: " << std::strerror(errno) << "\n";
        return 1;
    }
    int one = 1;
    setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(port);
    if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 ||
        ::listen(listener, 16) < 0) {
        std::cerr << "mcl-server: bind/listen: " << std::strerror(errno) << "\n";
        return 1;
    }
    std::signal(SIGPIPE, SIG_IGN);
    log_line("listening port=" + std::to_string(port) + " items=" + std::to_string(store.size()));

    std::vector<std::thread> workers;
    while (!g_stop) {
        int fd = ::accept(listener, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR) continue;
            break;
        }
        workers.emplace_back(serve_connection, fd, std::ref(store));
    }
    for (auto& w : workers)
        if (w.joinable()) w.join();
    ::close(listener);
    return 0;
}
