/** DOM wiring: site form, what-if sliders, budget panel and charts.
 * Reads every displayed number from the store's last server responses. */

import { renderPowerSvg, renderProfileSvg } from "./chart.js";
import { PlannerState, PlannerStore, RadioFields } from "./state.js";
import {
  validateLatitude,
  validateLongitude,
  validateNumber,
  validateSiteName,
} from "./validate.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setText(id: string, text: string): void {
  el(id).textContent = text;
}

export function wireUi(store: PlannerStore): void {
  const sliderIds: [string, (v: number) => void][] = [
    ["tx-height", (v) => store.setTxHeight(v)],
    ["rx-height", (v) => store.setRxHeight(v)],
    ["k-factor", (v) => store.setKFactor(v)],
    ["frequency", (v) => store.setFrequency(v)],
  ];
  for (const [id, setter] of sliderIds) {
    const input = el<HTMLInputElement>(id);
    input.addEventListener("input", () => {
      setText(`${id}-value`, input.value);
      setter(Number(input.value));
    });
  }

  el<HTMLButtonElement>("site-add").addEventListener("click", () => {
    void submitSiteForm(store);
  });
  el<HTMLButtonElement>("site-geolocate").addEventListener("click", () => {
    geolocate();
  });
  el<HTMLButtonElement>("link-select").addEventListener("click", () => {
    const tx = el<HTMLSelectElement>("tx-select").value;
    const rx = el<HTMLSelectElement>("rx-select").value;
    if (tx && rx && tx !== rx) {
      store.selectSites(tx, rx);
      store.requestProfile();
    }
  });
  el<HTMLButtonElement>("budget-apply").addEventListener("click", () => {
    submitBudgetForm(store);
  });
}

async function submitSiteForm(store: PlannerStore): Promise<void> {
  const name = el<HTMLInputElement>("site-name").value.trim();
  const lat = Number(el<HTMLInputElement>("site-lat").value);
  const lon = Number(el<HTMLInputElement>("site-lon").value);
  const problem =
    validateSiteName(name) ?? validateLatitude(lat) ?? validateLongitude(lon);
  if (problem) {
    setText("site-error", problem);
    return;
  }
  setText("site-error", "");
  const serverProblem = await store.addSite(name, lat, lon);
  if (serverProblem) setText("site-error", serverProblem);
}

function geolocate(): void {
  if (!navigator.geolocation) {
    setText("site-error", "geolocation unavailable; enter coordinates manually");
    return;
  }
  navigator.geolocation.getCurrentPosition(
    (pos) => {
      el<HTMLInputElement>("site-lat").value = pos.coords.latitude.toFixed(5);
      el<HTMLInputElement>("site-lon").value = pos.coords.longitude.toFixed(5);
      setText("site-error", "");
    },
    () => setText("site-error", "geolocation denied; enter coordinates manually"),
  );
}

function submitBudgetForm(store: PlannerStore): void {
  const fields: [keyof RadioFields, string][] = [
    ["tx_power_dbm", "budget-txpower"],
    ["tx_cable_loss_db", "budget-txcable"],
    ["tx_antenna_gain_dbi", "budget-txgain"],
    ["rx_antenna_gain_dbi", "budget-rxgain"],
    ["rx_cable_loss_db", "budget-rxcable"],
    ["rx_sensitivity_dbm", "budget-sens"],
  ];
  const radios = {} as RadioFields;
  for (const [key, id] of fields) {
    const value = Number(el<HTMLInputElement>(id).value);
    const problem = validateNumber(value, id.replace("budget-", ""));
    if (problem) {
      setText("budget-error", problem);
      return;
    }
    radios[key] = value;
  }
  setText("budget-error", "");
  store.setRadios(radios);
}

export function render(state: PlannerState): void {
  el("offline-banner").style.display = state.offline ? "block" : "none";
  el("stale-badge").style.display = state.stale ? "inline-block" : "none";
  setText("last-error", state.lastError ?? "");

  const options = state.sites
    .map((s) => `<option value="${s.name}">${s.name}</option>`)
    .join("");
  for (const id of ["tx-select", "rx-select"]) {
    const select = el<HTMLSelectElement>(id);
    const previous = select.value;
    select.innerHTML = options;
    if (previous) select.value = previous;
  }
  el("site-list").innerHTML = state.sites
    .map(
      (s) =>
        `<li>${s.name}: ${s.lat.toFixed(4)}, ${s.lon.toFixed(4)}` +
        (s.elevation_m === null ? " (elevation unknown)" : ` (${s.elevation_m.toFixed(0)} m)`) +
        `</li>`,
    )
    .join("");

  el<HTMLButtonElement>("link-select").disabled = state.offline || state.sites.length < 2;

  if (state.profile) {
    const v = state.profile.verdict;
    const verdictText =
      v.class === "CLEAR"
        ? "The first Fresnel zone is clear."
        : `${v.class}: worst clearance ${v.worst_fraction.toFixed(2)} F1 at ` +
          `${v.worst_distance_km.toFixed(2)} km`;
    setText("verdict", verdictText);
    el("verdict").className = `verdict ${v.class.toLowerCase()}`;
    setText(
      "loss-summary",
      `path loss ${state.profile.loss.model_loss_db.toFixed(2)} dB ` +
        `(free space ${state.profile.loss.fspl_db.toFixed(2)} dB, ` +
        `shielding ${state.profile.loss.shielding_db.toFixed(2)} dB, ` +
        `${state.profile.loss.mode})`,
    );
    el("profile-chart").innerHTML = renderProfileSvg(state.profile);
  }

  if (state.budget) {
    setText("budget-eirp", `${state.budget.eirp_dbm.toFixed(2)} dBm`);
    setText("budget-rx", `${state.budget.rx_power_dbm.toFixed(2)} dBm`);
    setText("budget-margin", `${state.budget.margin_db.toFixed(2)} dB`);
    el("budget-margin").className =
      state.budget.margin_db < 0 ? "margin alarm" : "margin ok";
    if (state.radios) {
      el("power-chart").innerHTML = renderPowerSvg(
        state.budget,
        state.radios.rx_sensitivity_dbm,
      );
    }
  }

  el("history").innerHTML = state.history
    .map(
      (h) =>
        `<span class="history-entry">K=${h.kFactor.toFixed(2)} ` +
        `h=${h.txHeightM.toFixed(0)}m ` +
        `margin=${h.marginDb === null ? "?" : h.marginDb.toFixed(1) + " dB"}</span>`,
    )
    .join(" ");
}
