#include "kepmpc/runtime/transport.hpp"

namespace kepmpc {

class InProcessEndpoint final : public Transport {
 public:
  InProcessEndpoint(InProcessNetwork& net, PartyId id) : net_(net), id_(id) {}

  std::vector<Payload> exchange(std::vector<Payload> outgoing) override {
    const int n = net_.parties_;
    if (static_cast<int>(outgoing.size()) != n) throw TransportError("outgoing batch has wrong party count");
    for (int j = 0; j < n; ++j) {
      if (j == id_ - 1) continue;
      auto& box = *net_.boxes_[j];
      {
        std::lock_guard lock(box.mu);
        box.queues[id_ - 1].push_back(std::move(outgoing[j]));
      }
      box.cv.notify_all();
    }
    std::vector<Payload> incoming(n);
    auto& mine = *net_.boxes_[id_ - 1];
    std::unique_lock lock(mine.mu);
    for (int j = 0; j < n; ++j) {
      if (j == id_ - 1) continue;
      mine.cv.wait(lock, [&] { return !mine.queues[j].empty() || net_.aborted_.load(); });
      if (mine.queues[j].empty()) throw AbortedError();
      incoming[j] = std::move(mine.queues[j].front());
      mine.queues[j].pop_front();
    }
    return incoming;
  }

 private:
  InProcessNetwork& net_;
  PartyId id_;
};

InProcessNetwork::InProcessNetwork(int parties) : parties_(parties) {
  for (int i = 0; i < parties; ++i) {
    auto box = std::make_unique<Mailbox>();
    box->queues.resize(parties);
    boxes_.push_back(std::move(box));
  }
}

std::unique_ptr<Transport> InProcessNetwork::endpoint(PartyId id) {
  if (id < 1 || id > parties_) throw TransportError("party id out of range");
  return std::make_unique<InProcessEndpoint>(*this, id);
}

void InProcessNetwork::abort() {
  aborted_ = true;
  for (auto& box : boxes_) {
    std::lock_guard lock(box->mu);
    box->cv.notify_all();
  }
}

}  // namespace kepmpc
