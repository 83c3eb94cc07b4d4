import { ApiClient } from "./api";
import { mountApp } from "./app";
import "./style.css";

const apiBase = import.meta.env.VITE_API_BASE ?? "http://127.0.0.1:8640";
const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app element");
}
mountApp(root, new ApiClient(apiBase)).catch((error) => {
  root.textContent = `failed to reach the dialogue service at ${apiBase}: ${error}`;
});
