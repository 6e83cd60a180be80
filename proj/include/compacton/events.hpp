#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace compacton {

enum class EventKind { SupportBreach, RegularityLoss, Blowup };

std::string_view to_string(EventKind kind);
EventKind event_kind_from_string(std::string_view s);

struct Event {
  double t = 0.0;
  EventKind kind = EventKind::SupportBreach;
  std::string detail;
};

using EventLog = std::vector<Event>;

}  // namespace compacton
