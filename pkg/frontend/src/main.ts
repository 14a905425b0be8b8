import { ConsoleApi } from "./api.js";
import { createConsole } from "./console.js";

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("api") ?? "http://127.0.0.1:8077";
  const teller = params.get("teller") ?? "console";
  const offset = params.get("offset") ?? "0";
  const api = new ConsoleApi(base);
  await api.open({ teller, utcOffset: offset });
  const mount = document.getElementById("app");
  if (!mount) throw new Error("missing #app mount point");
  createConsole(mount, api);
}

void boot();
