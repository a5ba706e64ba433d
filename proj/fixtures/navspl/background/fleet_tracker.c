/* Fleet tracker maintained by the crosscomer in application engineering. */
#include "fleet.h"

// Each truck reports GPS positions; the tracker keeps recent waypoints.
void fleet_tracker_on_position(struct fleet_tracker *tracker, int truck_id,
                               struct position pos) {
  struct truck *truck = fleet_truck(tracker, truck_id);
  pos = kalman_filter_update(truck->filter, pos.latitude, pos.longitude, pos.hdop);
  waypoint_list_append(&truck->waypoints, pos);
  if (route_deviation(truck->route, pos) > tracker->deviation_limit_m)
    fleet_alert(tracker, truck_id, ALERT_OFF_ROUTE);
}

/* Parse NMEA sentences relayed by the telematics box. */
int fleet_tracker_parse(struct fleet_tracker *tracker, const char *line) {
  struct nmea_sentence sentence;
  strncpy(sentence.text, line, sizeof sentence.text);
  if (!nmea_parse(&sentence)) return 0;
  if (sentence.fix_quality == 0) return 0;
  struct position pos = {sentence.latitude, sentence.longitude, sentence.hdop};
  fleet_tracker_on_position(tracker, sentence.device_id, pos);
  return 1;
}

// Distance travelled along the recorded waypoints.
double fleet_truck_distance(const struct truck *truck) {
  double total = 0.0;
  for (int i = 1; i < truck->waypoints.count; ++i)
    total += haversine_distance_pos(truck->waypoints.items[i - 1],
                                    truck->waypoints.items[i]);
  return total;
}
