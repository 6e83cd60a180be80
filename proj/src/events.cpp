#include "compacton/events.hpp"

#include "compacton/error.hpp"

namespace compacton {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::SupportBreach:
      return "support_breach";
    case EventKind::RegularityLoss:
      return "regularity_loss";
    case EventKind::Blowup:
      return "blowup";
  }
  return "unknown";
}

EventKind event_kind_from_string(std::string_view s) {
  if (s == "support_breach") return EventKind::SupportBreach;
  if (s == "regularity_loss") return EventKind::RegularityLoss;
  if (s == "blowup") return EventKind::Blowup;
  throw ConfigError("unknown event kind '" + std::string(s) + "'");
}

}  // namespace compacton
