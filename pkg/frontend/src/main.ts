import { ApiClient } from "./api.js";
import { PlannerStore } from "./state.js";
import { render, wireUi } from "./ui.js";

const api = new ApiClient("");
const store = new PlannerStore(api, render);

wireUi(store);
void store.refreshHealth().then(() => store.refreshSites().catch(() => {}));
setInterval(() => void store.refreshHealth(), 15000);
