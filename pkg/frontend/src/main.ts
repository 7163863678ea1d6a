import { ApiClient } from "./api.js";
import { ExplorerView } from "./view.js";

function apiBase(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("api") ?? "http://127.0.0.1:8080";
}

window.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("explorer");
  if (!root) throw new Error("missing #explorer mount point");
  new ExplorerView(root, new ApiClient(apiBase()));
});
