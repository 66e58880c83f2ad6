import { App } from "./app.js";
import { Client } from "./api.js";

function metaContent(name: string, fallback: string): string {
  const tag = document.querySelector(`meta[name="${name}"]`);
  return tag?.getAttribute("content") || fallback;
}

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app element");

const apiBase = metaContent("api-base", "http://localhost:8000");
const facetKey = metaContent("facet-key", "party");

new App(root, new Client(apiBase), facetKey).start();
