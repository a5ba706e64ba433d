/* GPS receiver, position filter and route tracking. */
#include "nav.h"

#ifdef FEAT_GPS
void gps_receiver_start(struct gps_receiver *receiver, const char *device) {
  receiver->port = serial_open(device, 9600);
  receiver->filter = kalman_filter_create(4);
  receiver->fix_quality = 0;
}

// NMEA sentences carry latitude, longitude and fix quality.
struct position gps_receiver_poll(struct gps_receiver *receiver) {
  struct nmea_sentence sentence;
  struct position pos = receiver->last_position;
  while (serial_read_line(receiver->port, sentence.text, sizeof sentence.text)) {
    if (!nmea_parse(&sentence)) continue;
    receiver->fix_quality = sentence.fix_quality;
    if (sentence.fix_quality == 0) continue;
    pos = kalman_filter_update(receiver->filter, sentence.latitude,
                               sentence.longitude, sentence.hdop);
  }
  receiver->last_position = pos;
  return pos;
}

/* Snap the filtered position to the nearest road segment. */
struct position gps_snap_to_road(struct map_cache *cache, struct position pos) {
  struct node_id node = map_nearest_node(cache, pos);
  return node_position(cache, node);
}

void route_tracker_update(struct route_tracker *tracker, struct position pos) {
  tracker->current = pos;
  waypoint_list_append(&tracker->waypoints, pos);
  if (route_deviation(tracker->route, pos) > tracker->deviation_limit_m) {
    tracker->needs_reroute = 1;
  }
  if (route_waypoint_reached(tracker->route, pos)) {
    tracker->next_waypoint++;
  }
}

#ifdef FEAT_TRAFFIC
// Traffic-aware tracking re-evaluates the route when incidents change.
void route_tracker_on_incidents(struct route_tracker *tracker,
                                const struct incident_list *incidents) {
  if (incident_list_touches_route(incidents, tracker->route))
    tracker->needs_reroute = 1;
}
#endif
#endif
