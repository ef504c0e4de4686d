#include "manet/packet.h"

namespace manet {

namespace {

template <class... Ts>
struct Overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
Overloaded (Ts...) -> Overloaded<Ts...>;

} // namespace

bool
IsControl (const Payload &p)
{
  return !std::holds_alternative<DataPacket> (p);
}

ProtocolId
ControlProtocol (const Payload &p)
{
  return std::visit (Overloaded{
                         [] (const DataPacket &) { return ProtocolId::Deerp; },
                         [] (const DsdvAdvert &) { return ProtocolId::Dsdv; },
                         [] (const DsrRequest &) { return ProtocolId::Dsr; },
                         [] (const DsrReply &) { return ProtocolId::Dsr; },
                         [] (const DsrError &) { return ProtocolId::Dsr; },
                         [] (const AodvRequest &) { return ProtocolId::Aodv; },
                         [] (const AodvReply &) { return ProtocolId::Aodv; },
                         [] (const AodvError &) { return ProtocolId::Aodv; },
                     },
                     p);
}

const char *
PayloadName (const Payload &p)
{
  return std::visit (Overloaded{
                         [] (const DataPacket &) { return "data"; },
                         [] (const DsdvAdvert &a) { return a.triggered ? "dsdv-triggered" : "dsdv-update"; },
                         [] (const DsrRequest &) { return "dsr-rreq"; },
                         [] (const DsrReply &) { return "dsr-rrep"; },
                         [] (const DsrError &) { return "dsr-rerr"; },
                         [] (const AodvRequest &) { return "aodv-rreq"; },
                         [] (const AodvReply &) { return "aodv-rrep"; },
                         [] (const AodvError &) { return "aodv-rerr"; },
                     },
                     p);
}

std::uint32_t
PayloadBytes (const Payload &p)
{
  return std::visit (Overloaded{
                         [] (const DataPacket &d) -> std::uint32_t {
                           if (d.sourceRoute.empty ())
                             {
                               return d.payloadBytes;
                             }
                           return d.payloadBytes + 4 + 4 * static_cast<std::uint32_t> (d.sourceRoute.size ());
                         },
                         [] (const DsdvAdvert &a) -> std::uint32_t {
                           return 20 + 12 * static_cast<std::uint32_t> (a.items.size ());
                         },
                         [] (const DsrRequest &r) -> std::uint32_t {
                           return 64 + 4 * static_cast<std::uint32_t> (r.record.size ());
                         },
                         [] (const DsrReply &r) -> std::uint32_t {
                           return 64 + 4 * static_cast<std::uint32_t> (r.route.size ());
                         },
                         [] (const DsrError &e) -> std::uint32_t {
                           return 64 + 4 * static_cast<std::uint32_t> (e.path.size ());
                         },
                         [] (const AodvRequest &) -> std::uint32_t { return 24; },
                         [] (const AodvReply &) -> std::uint32_t { return 24; },
                         [] (const AodvError &) -> std::uint32_t { return 24; },
                     },
                     p);
}

} // namespace manet
