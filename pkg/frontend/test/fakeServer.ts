/** In-memory stand-in for the planning gateway, speaking the same JSON
 * shapes. Verdicts and budgets are canned server-side arithmetic so
 * tests can prove the UI never computes physics on its own. */

import type { FetchLike } from "../src/api.js";

export interface FakeServerOptions {
  /** K threshold below which the canned link becomes obstructed. */
  marginalK?: number;
  /** artificial latency per request in ms */
  delayMs?: number;
  /** fail the next N profile requests with HTTP 500 */
  failNextProfiles?: number;
}

export class FakeServer {
  profileRequests: any[] = [];
  budgetRequests: any[] = [];
  inFlight = 0;
  maxInFlight = 0;
  private failProfiles: number;
  private readonly marginalK: number;
  private readonly delayMs: number;
  readonly sites = [
    { name: "alpha", lat: 0.3, lon: 0.3, elevation_m: 0 },
    { name: "bravo", lat: 0.3, lon: 0.39, elevation_m: 0 },
  ];

  constructor(opts: FakeServerOptions = {}) {
    this.marginalK = opts.marginalK ?? 1.2;
    this.delayMs = opts.delayMs ?? 0;
    this.failProfiles = opts.failNextProfiles ?? 0;
  }

  fetch: FetchLike = async (input, init) => {
    this.inFlight += 1;
    this.maxInFlight = Math.max(this.maxInFlight, this.inFlight);
    try {
      if (this.delayMs > 0) {
        await new Promise((resolve) => setTimeout(resolve, this.delayMs));
      }
      return this.route(input, init);
    } finally {
      this.inFlight -= 1;
    }
  };

  private route(url: string, init?: RequestInit): Response {
    if (url.endsWith("/healthz")) {
      return new Response("ok", { status: 200 });
    }
    if (url.includes("/api/sites")) {
      return json({ sites: this.sites });
    }
    if (url.endsWith("/api/command")) {
      const body = JSON.parse(String(init?.body));
      const parts = body.line.split(/\s+/);
      if (parts[0] === "site") {
        this.sites.push({
          name: parts[1],
          lat: Number(parts[2]),
          lon: Number(parts[3]),
          elevation_m: 0,
        });
        return json({ kind: "text", body: `stored site ${parts[1]}`, chart_ref: null, diagnostics: [] });
      }
      return json({ kind: "error", body: "unsupported in fake", chart_ref: null, diagnostics: [] });
    }
    if (url.endsWith("/api/profile")) {
      const body = JSON.parse(String(init?.body));
      this.profileRequests.push(body);
      if (this.failProfiles > 0) {
        this.failProfiles -= 1;
        return new Response(JSON.stringify({ error: "injected failure" }), { status: 500 });
      }
      return json(this.profilePayload(body));
    }
    if (url.endsWith("/api/budget")) {
      const body = JSON.parse(String(init?.body));
      this.budgetRequests.push(body);
      return json(this.budgetPayload(body));
    }
    return new Response("not found", { status: 404 });
  }

  private profilePayload(req: any) {
    const clear = req.k_factor >= this.marginalK;
    const n = 11;
    const distances = Array.from({ length: n }, (_, i) => (10 * i) / (n - 1));
    return {
      tx: req.tx,
      rx: req.rx,
      distance_km: 10,
      sample_spacing_m: 1000,
      frequency_mhz: req.frequency_mhz,
      k_factor: req.k_factor,
      distances_km: distances,
      terrain_m: distances.map(() => 0),
      bulge_m: distances.map(() => 1),
      los_m: distances.map(() => req.tx_height_m),
      fresnel1_m: distances.map(() => 10),
      clearance_fraction: distances.map((_, i) =>
        i === 0 || i === n - 1 ? null : clear ? 0.9 : -0.2,
      ),
      verdict: clear
        ? { worst_fraction: 0.9, worst_distance_km: 5, class: "CLEAR" }
        : { worst_fraction: -0.2, worst_distance_km: 5, class: "OBSTRUCTED" },
      loss: {
        fspl_db: 127.7,
        model_loss_db: clear ? 127.7 : 141.9,
        shielding_db: clear ? 0 : 14.2,
        mode: clear ? "Line-Of-Sight" : "Diffraction",
        model: "itm",
      },
    };
  }

  private budgetPayload(req: any) {
    const loss = req.path_loss_db ?? 129.69;
    const eirp = req.tx_power_dbm - req.tx_cable_loss_db + req.tx_antenna_gain_dbi;
    const rx = eirp - loss + req.rx_antenna_gain_dbi - req.rx_cable_loss_db;
    return {
      eirp_dbm: eirp,
      path_loss_db: loss,
      rx_power_dbm: rx,
      margin_db: rx - req.rx_sensitivity_dbm,
      frequency_mhz: req.frequency_mhz ?? 5800,
      series: [
        [0, eirp],
        [5, rx + 6.02],
        [10, rx],
      ],
    };
  }
}

function json(payload: unknown): Response {
  return new Response(JSON.stringify(payload), {
    status: 200,
    headers: { "Content-Type": "application/json" },
  });
}
