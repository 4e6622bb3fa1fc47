import { GatewayClient } from "./api.js";
import { CockpitApp } from "./app.js";
const root = document.getElementById("app");
if (!root)
    throw new Error("missing #app mount point");
const client = new GatewayClient(window.location.origin);
const app = new CockpitApp(root, client);
void app.start();
