#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>

#include "kepmpc/runtime/transport.hpp"

namespace kepmpc {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::uint8_t* data, std::size_t len) {
  while (len > 0) {
    const ssize_t n = ::send(fd, data, len, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("send");
    }
    data += n;
    len -= static_cast<std::size_t>(n);
  }
}

void read_all(int fd, std::uint8_t* data, std::size_t len) {
  while (len > 0) {
    const ssize_t n = ::recv(fd, data, len, 0);
    if (n == 0) throw TransportError("connection closed by peer");
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("recv");
    }
    data += n;
    len -= static_cast<std::size_t>(n);
  }
}

void put_u32(std::uint8_t* out, std::uint32_t v) {
  out[0] = static_cast<std::uint8_t>(v >> 24);
  out[1] = static_cast<std::uint8_t>(v >> 16);
  out[2] = static_cast<std::uint8_t>(v >> 8);
  out[3] = static_cast<std::uint8_t>(v);
}

}  // namespace

std::vector<std::uint8_t> encode_frame(const PrimeField& f, const Payload& p) {
  const std::size_t len = p.size() * f.byte_width();
  if (len > 0xFFFFFFFFu) throw TransportError("frame too large");
  std::vector<std::uint8_t> out(4 + len);
  put_u32(out.data(), static_cast<std::uint32_t>(len));
  for (std::size_t i = 0; i < p.size(); ++i) f.serialize(p[i], out.data() + 4 + i * f.byte_width());
  return out;
}

std::uint32_t decode_frame_length(const std::uint8_t* h) {
  return (std::uint32_t{h[0]} << 24) | (std::uint32_t{h[1]} << 16) | (std::uint32_t{h[2]} << 8) | h[3];
}

class SocketEndpoint final : public Transport {
 public:
  SocketEndpoint(SocketNetwork& net, PartyId id, std::vector<int> fds) : net_(net), id_(id), fds_(std::move(fds)) {}

  ~SocketEndpoint() override {
    for (int fd : fds_) {
      if (fd >= 0) ::close(fd);
    }
  }

  std::vector<Payload> exchange(std::vector<Payload> outgoing) override {
    const int n = net_.parties_;
    const PrimeField& f = *net_.field_;
    struct Link {
      std::vector<std::uint8_t> out;
      std::size_t sent = 0;
      std::uint8_t header[4];
      std::size_t header_read = 0;
      std::vector<std::uint8_t> in;
      std::size_t in_read = 0;
      bool have_header = false;
      bool done_in = false;
    };
    std::vector<Link> links(n);
    for (int j = 0; j < n; ++j) {
      if (j == id_ - 1) continue;
      links[j].out = encode_frame(f, outgoing[j]);
    }

    for (;;) {
      if (net_.aborted_) throw AbortedError();
      std::vector<pollfd> pfds;
      std::vector<int> who;
      for (int j = 0; j < n; ++j) {
        if (j == id_ - 1) continue;
        short events = 0;
        if (links[j].sent < links[j].out.size()) events |= POLLOUT;
        if (!links[j].done_in) events |= POLLIN;
        if (events == 0) continue;
        pfds.push_back({fds_[j], events, 0});
        who.push_back(j);
      }
      if (pfds.empty()) break;
      const int rc = ::poll(pfds.data(), pfds.size(), 200);
      if (rc < 0) {
        if (errno == EINTR) continue;
        fail("poll");
      }
      for (std::size_t k = 0; k < pfds.size(); ++k) {
        Link& l = links[who[k]];
        const int fd = pfds[k].fd;
        if (pfds[k].revents & (POLLERR | POLLNVAL)) throw TransportError("socket error");
        if (pfds[k].revents & POLLOUT) {
          const ssize_t w = ::send(fd, l.out.data() + l.sent, l.out.size() - l.sent, MSG_NOSIGNAL | MSG_DONTWAIT);
          if (w < 0 && errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) fail("send");
          if (w > 0) l.sent += static_cast<std::size_t>(w);
        }
        if (pfds[k].revents & (POLLIN | POLLHUP)) {
          std::uint8_t* dst;
          std::size_t want;
          if (!l.have_header) {
            dst = l.header + l.header_read;
            want = 4 - l.header_read;
          } else {
            dst = l.in.data() + l.in_read;
            want = l.in.size() - l.in_read;
          }
          const ssize_t r = ::recv(fd, dst, want, MSG_DONTWAIT);
          if (r == 0) throw TransportError("connection closed by peer");
          if (r < 0 && errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) fail("recv");
          if (r > 0) {
            if (!l.have_header) {
              l.header_read += static_cast<std::size_t>(r);
              if (l.header_read == 4) {
                l.have_header = true;
                l.in.resize(decode_frame_length(l.header));
                if (l.in.empty()) l.done_in = true;
              }
            } else {
              l.in_read += static_cast<std::size_t>(r);
              if (l.in_read == l.in.size()) l.done_in = true;
            }
          }
        }
      }
    }

    std::vector<Payload> incoming(n);
    for (int j = 0; j < n; ++j) {
      if (j == id_ - 1) continue;
      incoming[j] = deserialize_elements(f, links[j].in);
    }
    return incoming;
  }

 private:
  SocketNetwork& net_;
  PartyId id_;
  std::vector<int> fds_;
};

SocketNetwork::SocketNetwork(int parties, std::shared_ptr<const PrimeField> field)
    : parties_(parties), field_(std::move(field)) {
  for (int i = 0; i < parties; ++i) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) fail("socket");
    const int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) fail("bind");
    if (::listen(fd, parties) < 0) fail("listen");
    socklen_t len = sizeof(addr);
    if (::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) < 0) fail("getsockname");
    listeners_.push_back(fd);
    ports_.push_back(ntohs(addr.sin_port));
  }
}

SocketNetwork::~SocketNetwork() {
  for (int fd : listeners_) ::close(fd);
}

void SocketNetwork::register_fd(int fd) {
  std::lock_guard lock(fds_mu_);
  open_fds_.push_back(fd);
}

void SocketNetwork::abort() {
  aborted_ = true;
  std::lock_guard lock(fds_mu_);
  for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
}

std::unique_ptr<Transport> SocketNetwork::endpoint(PartyId id) {
  if (id < 1 || id > parties_) throw TransportError("party id out of range");
  std::vector<int> fds(parties_, -1);
  const int one = 1;
  // Lower ids listen, higher ids dial; the hello carries the dialer's id.
  for (PartyId j = 1; j < id; ++j) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) fail("socket");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(ports_[j - 1]);
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) fail("connect");
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    std::uint8_t hello[4];
    put_u32(hello, static_cast<std::uint32_t>(id));
    write_all(fd, hello, 4);
    fds[j - 1] = fd;
    register_fd(fd);
  }
  for (PartyId k = id + 1; k <= parties_; ++k) {
    const int fd = ::accept(listeners_[id - 1], nullptr, nullptr);
    if (fd < 0) fail("accept");
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    std::uint8_t hello[4];
    read_all(fd, hello, 4);
    const auto from = static_cast<PartyId>(decode_frame_length(hello));
    if (from <= id || from > parties_ || fds[from - 1] != -1) throw TransportError("unexpected hello");
    fds[from - 1] = fd;
    register_fd(fd);
  }
  return std::make_unique<SocketEndpoint>(*this, id, std::move(fds));
}

}  // namespace kepmpc
