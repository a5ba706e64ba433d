/* Traffic incident feed (TMC). */
#include "nav.h"

#ifdef FEAT_TRAFFIC
void traffic_feed_subscribe(struct traffic_feed *feed, const char *url) {
  feed->channel = tmc_channel_open(url);
  incident_list_init(&feed->incidents);
}

/* Decode TMC messages into incidents with a speed factor per segment. */
int traffic_feed_poll(struct traffic_feed *feed) {
  struct tmc_message message;
  int changed = 0;
  while (tmc_channel_receive(feed->channel, &message)) {
    struct incident incident;
    incident.segment = tmc_location_to_segment(message.location);
    incident.speed_factor = congestion_speed_factor(message.event_code);
    incident.expires_at = message.timestamp + message.duration_s;
    incident_list_upsert(&feed->incidents, incident);
    changed = 1;
  }
  changed |= incident_list_expire(&feed->incidents, clock_now());
  return changed;
}

// Severe congestion halves the expected speed on a segment.
double congestion_speed_factor(int event_code) {
  switch (event_code) {
    case TMC_STATIONARY_TRAFFIC: return 0.1;
    case TMC_QUEUING_TRAFFIC: return 0.3;
    case TMC_SLOW_TRAFFIC: return 0.5;
    default: return 1.0;
  }
}

#if defined(FEAT_GPS) && defined(WITH_ENGINE)
void traffic_feed_reroute(struct traffic_feed *feed, struct routing_engine *engine,
                          struct route_tracker *tracker) {
  routing_engine_apply_incidents(engine, &feed->incidents);
  route_tracker_on_incidents(tracker, &feed->incidents);
}
#endif
#endif
